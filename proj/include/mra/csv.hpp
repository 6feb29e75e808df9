#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mra/relation.hpp"

namespace mra {

using Json = nlohmann::ordered_json;

namespace csv {

/// Sidecar schema document: {"columns":[{"name":...,"type":"str"|"i64"|"f64"|"date"|"bool"}]}
inline Json schema_to_json(const AttributeSchema& schema) {
    Json cols = Json::array();
    for (const auto& a : schema.attributes())
        cols.push_back(Json{{"name", a.name}, {"type", type_name(a.type)}});
    return Json{{"columns", std::move(cols)}};
}

inline AttributeSchema schema_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("columns"))
        throw ParseError("schema document must be an object with a 'columns' array");
    std::vector<Attribute> attrs;
    for (const auto& c : j.at("columns")) {
        auto t = type_from_name(c.at("type").get<std::string>());
        if (!t) throw ParseError("unknown column type '" + c.at("type").get<std::string>() + "'");
        attrs.push_back({c.at("name").get<std::string>(), *t});
    }
    return AttributeSchema(std::move(attrs));
}

inline AttributeSchema read_schema_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open schema file " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("schema file " + path.string() + ": " + e.what());
    }
    return schema_from_json(j);
}

inline std::string escape_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Splits one RFC 4180 record; `line` must contain a full record (callers
/// handle quoted newlines by appending lines until quotes balance).
inline std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

inline bool quotes_balanced(const std::string& s) {
    bool quoted = false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
    }
    return !quoted;
}

/// Reads a header-row CSV against the sidecar schema. Header order may
/// differ from the schema's presentation order; names must match exactly.
/// Empty fields load as null; duplicate rows collapse (set semantics).
inline Relation read_csv(std::istream& in, const AttributeSchema& schema,
                         const std::string& what = "csv") {
    std::string line;
    auto next_record = [&](std::string& out) {
        if (!std::getline(in, out)) return false;
        while (!quotes_balanced(out)) {
            std::string more;
            if (!std::getline(in, more)) throw ParseError(what + ": unterminated quoted field");
            out += "\n" + more;
        }
        if (!out.empty() && out.back() == '\r') out.pop_back();
        return true;
    };

    if (!next_record(line)) throw ParseError(what + ": missing header row");
    auto header = split_record(line);
    std::vector<size_t> dest;  // schema index per csv column
    for (const auto& name : header) {
        if (!schema.has(name))
            throw ParseError(what + ": header column '" + name + "' is not in the schema");
        dest.push_back(schema.index_of(name));
    }
    if (header.size() != schema.size())
        throw ParseError(what + ": header has " + std::to_string(header.size()) +
                         " columns, schema declares " + std::to_string(schema.size()));

    Relation out(schema);
    size_t lineno = 1;
    while (next_record(line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_record(line);
        if (fields.size() != header.size())
            throw ParseError(what + " line " + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        Row row(schema.size());
        for (size_t i = 0; i < fields.size(); ++i)
            row[dest[i]] = Value::from_text(fields[i], schema.attributes()[dest[i]].type);
        out.push_unchecked(std::move(row));
    }
    out.finish();
    return out;
}

inline Relation read_csv_file(const std::filesystem::path& csv_path,
                              const std::filesystem::path& schema_path) {
    AttributeSchema schema = read_schema_file(schema_path);
    std::ifstream in(csv_path);
    if (!in) throw ParseError("cannot open csv file " + csv_path.string());
    return read_csv(in, schema, csv_path.string());
}

/// Writes header + rows. Rows are already canonically sorted by the
/// relation, so output is byte-stable.
inline void write_csv(std::ostream& out, const Relation& rel) {
    const auto& attrs = rel.schema().attributes();
    for (size_t i = 0; i < attrs.size(); ++i) {
        if (i) out << ',';
        out << escape_field(attrs[i].name);
    }
    out << '\n';
    for (const auto& row : rel.rows()) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (!row[i].is_null()) out << escape_field(row[i].to_text());
        }
        out << '\n';
    }
}

inline void write_csv_file(const std::filesystem::path& path, const Relation& rel) {
    std::ofstream out(path);
    if (!out) throw Error("IoError", "cannot write " + path.string());
    write_csv(out, rel);
}

}  // namespace csv
}  // namespace mra
