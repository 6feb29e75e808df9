#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mra/error.hpp"
#include "mra/value.hpp"

namespace mra {

/// Attribute-name sets are kept sorted; all schema identity in the algebra is
/// set identity, order is presentation only.
using NameSet = std::set<std::string>;

inline NameSet name_set(std::initializer_list<std::string> names) { return NameSet(names); }

inline NameSet set_union(const NameSet& a, const NameSet& b) {
    NameSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline NameSet set_intersect(const NameSet& a, const NameSet& b) {
    NameSet out;
    for (const auto& n : a)
        if (b.count(n)) out.insert(n);
    return out;
}

inline NameSet set_minus(const NameSet& a, const NameSet& b) {
    NameSet out;
    for (const auto& n : a)
        if (!b.count(n)) out.insert(n);
    return out;
}

inline bool is_subset(const NameSet& a, const NameSet& b) {
    return std::all_of(a.begin(), a.end(), [&](const auto& n) { return b.count(n) > 0; });
}

inline std::string join_names(const NameSet& names, const std::string& sep) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += sep;
        out += n;
    }
    return out;
}

struct Attribute {
    std::string name;
    ValueType type;

    bool operator==(const Attribute&) const = default;
};

/// An ordered list of uniquely named, typed attributes. Equality is
/// order-insensitive: same name set with matching types.
class AttributeSchema {
public:
    AttributeSchema() = default;
    AttributeSchema(std::vector<Attribute> attrs) : attrs_(std::move(attrs)) {
        for (size_t i = 0; i < attrs_.size(); ++i) {
            if (!index_.emplace(attrs_[i].name, i).second)
                throw DuplicateAttribute("attribute '" + attrs_[i].name + "' declared twice");
        }
    }
    AttributeSchema(std::initializer_list<Attribute> attrs)
        : AttributeSchema(std::vector<Attribute>(attrs)) {}

    const std::vector<Attribute>& attributes() const { return attrs_; }
    size_t size() const { return attrs_.size(); }
    bool empty() const { return attrs_.empty(); }

    bool has(const std::string& name) const { return index_.count(name) > 0; }

    size_t index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw UnknownAttribute("no attribute '" + name + "'");
        return it->second;
    }

    ValueType type_of(const std::string& name) const { return attrs_[index_of(name)].type; }

    NameSet names() const {
        NameSet out;
        for (const auto& a : attrs_) out.insert(a.name);
        return out;
    }

    /// Sub-schema restricted to `keep`, preserving this schema's order.
    AttributeSchema restrict_to(const NameSet& keep) const {
        std::vector<Attribute> out;
        for (const auto& a : attrs_)
            if (keep.count(a.name)) out.push_back(a);
        if (out.size() != keep.size()) {
            for (const auto& n : keep)
                if (!has(n)) throw UnknownAttribute("no attribute '" + n + "'");
        }
        return AttributeSchema(std::move(out));
    }

    bool operator==(const AttributeSchema& other) const {
        if (attrs_.size() != other.attrs_.size()) return false;
        for (const auto& a : attrs_) {
            auto it = other.index_.find(a.name);
            if (it == other.index_.end() || other.attrs_[it->second].type != a.type) return false;
        }
        return true;
    }

    std::string display() const {
        std::string out = "[";
        for (size_t i = 0; i < attrs_.size(); ++i) {
            if (i) out += ", ";
            out += attrs_[i].name;
        }
        return out + "]";
    }

private:
    std::vector<Attribute> attrs_;
    std::unordered_map<std::string, size_t> index_;
};

using Row = std::vector<Value>;

/// A tuple carrying its own schema; regions and partition keys are Tuples.
struct Tuple {
    AttributeSchema schema;
    Row values;

    const Value& at(const std::string& name) const { return values[schema.index_of(name)]; }

    bool operator==(const Tuple& other) const {
        if (!(schema == other.schema)) return false;
        for (const auto& a : schema.attributes())
            if (!(at(a.name) == other.at(a.name))) return false;
        return true;
    }

    size_t hash() const {
        size_t seed = 0;
        for (const auto& a : schema.attributes()) {
            seed ^= std::hash<std::string>{}(a.name) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
            seed ^= at(a.name).hash() + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
        }
        return seed;
    }

    /// Total order by sorted attribute names, then values; deterministic
    /// ordering only, no semantic meaning.
    std::strong_ordering sort_order(const Tuple& other) const {
        auto an = schema.names(), bn = other.schema.names();
        if (auto c = std::lexicographical_compare_three_way(an.begin(), an.end(), bn.begin(), bn.end());
            c != 0)
            return c;
        for (const auto& n : an) {
            if (auto c = at(n).sort_order(other.at(n)); c != 0) return c;
        }
        return std::strong_ordering::equal;
    }

    std::string display() const {
        std::string out = "(";
        bool first = true;
        for (const auto& n : schema.names()) {
            if (!first) out += ", ";
            first = false;
            out += n + "=" + (at(n).is_null() ? "null" : at(n).to_text());
        }
        return out + ")";
    }
};

class Relation;
namespace detail {
Relation join_impl(const Relation& left, const Relation& right,
                   const std::vector<std::pair<std::string, std::string>>& on, bool full_outer);
}

/// A set of typed tuples under a fixed schema. Rows are kept in a canonical
/// sorted order (by value under sorted attribute names) with duplicates
/// collapsed, which makes relation equality and serialized output stable.
class Relation {
public:
    Relation() = default;
    explicit Relation(AttributeSchema schema) : schema_(std::move(schema)) {}
    Relation(AttributeSchema schema, std::vector<Row> rows) : schema_(std::move(schema)) {
        for (auto& r : rows) insert_unchecked(std::move(r));
        canonicalize();
    }

    const AttributeSchema& schema() const { return schema_; }
    const std::vector<Row>& rows() const { return rows_; }
    size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    const Value& cell(size_t row, const std::string& attr) const {
        return rows_[row][schema_.index_of(attr)];
    }

    Tuple tuple_at(size_t row) const { return Tuple{schema_, rows_[row]}; }

    /// Set equality across presentation orders: same attribute name set and
    /// types, same row set.
    bool equals(const Relation& other) const {
        if (!(schema_ == other.schema_) || rows_.size() != other.rows_.size()) return false;
        // both sides are canonically sorted by sorted-name projection
        std::vector<size_t> perm = projection_of(other.schema_);
        for (size_t i = 0; i < rows_.size(); ++i) {
            for (size_t j = 0; j < perm.size(); ++j)
                if (!(rows_[i][j] == other.rows_[i][perm[j]])) return false;
        }
        return true;
    }

    // -- classical operators -------------------------------------------------

    Relation project(const NameSet& attrs) const {
        AttributeSchema out_schema = schema_.restrict_to(attrs);
        Relation out(out_schema);
        std::vector<size_t> idx;
        for (const auto& a : out_schema.attributes()) idx.push_back(schema_.index_of(a.name));
        for (const auto& r : rows_) {
            Row nr;
            nr.reserve(idx.size());
            for (size_t i : idx) nr.push_back(r[i]);
            out.insert_unchecked(std::move(nr));
        }
        out.canonicalize();
        return out;
    }

    template <typename Pred>
    Relation select(Pred&& keep) const {
        Relation out(schema_);
        for (size_t i = 0; i < rows_.size(); ++i)
            if (keep(*this, i)) out.insert_unchecked(Row(rows_[i]));
        out.canonicalize();
        return out;
    }

    /// Partition by `keys`: one group per distinct key tuple, each group
    /// holding the key-stripped remainder. Groups come back sorted by key.
    std::vector<std::pair<Tuple, Relation>> partition(const NameSet& keys) const {
        AttributeSchema key_schema = schema_.restrict_to(keys);
        AttributeSchema rest_schema = schema_.restrict_to(set_minus(schema_.names(), keys));
        std::vector<size_t> key_idx, rest_idx;
        for (const auto& a : key_schema.attributes()) key_idx.push_back(schema_.index_of(a.name));
        for (const auto& a : rest_schema.attributes()) rest_idx.push_back(schema_.index_of(a.name));

        std::map<std::vector<std::string>, std::pair<Tuple, std::vector<Row>>> groups;
        for (const auto& r : rows_) {
            Row key_row;
            for (size_t i : key_idx) key_row.push_back(r[i]);
            auto sort_key = group_key(key_schema, key_row);
            auto [it, fresh] = groups.try_emplace(std::move(sort_key),
                                                  Tuple{key_schema, std::move(key_row)},
                                                  std::vector<Row>{});
            Row rest;
            for (size_t i : rest_idx) rest.push_back(r[i]);
            it->second.second.push_back(std::move(rest));
        }
        std::vector<std::pair<Tuple, Relation>> out;
        out.reserve(groups.size());
        for (auto& [k, g] : groups)
            out.emplace_back(std::move(g.first), Relation(rest_schema, std::move(g.second)));
        return out;
    }

    friend Relation join(const Relation& left, const Relation& right,
                         const std::vector<std::pair<std::string, std::string>>& on,
                         bool full_outer) {
        return detail::join_impl(left, right, on, full_outer);
    }

    /// Set union; requires identical schemas.
    friend Relation relation_union(const Relation& a, const Relation& b) {
        if (!(a.schema_ == b.schema_))
            throw SchemaMismatch("union requires identical schemas, got " + a.schema_.display() +
                                 " and " + b.schema_.display());
        Relation out(a.schema_);
        for (const auto& r : a.rows_) out.insert_unchecked(Row(r));
        auto perm = a.projection_of(b.schema_);
        for (const auto& r : b.rows_) {
            Row nr(perm.size());
            for (size_t j = 0; j < perm.size(); ++j) nr[j] = r[perm[j]];
            out.insert_unchecked(std::move(nr));
        }
        out.canonicalize();
        return out;
    }

    /// Union over arbitrary schemas; missing attributes are null-padded.
    /// Shared attribute names must agree on type.
    friend Relation union_padded(const std::vector<Relation>& relations) {
        std::vector<Attribute> attrs;
        std::unordered_map<std::string, ValueType> seen;
        for (const auto& r : relations) {
            for (const auto& a : r.schema().attributes()) {
                auto it = seen.find(a.name);
                if (it == seen.end()) {
                    seen.emplace(a.name, a.type);
                    attrs.push_back(a);
                } else if (it->second != a.type) {
                    throw TypeMismatch("attribute '" + a.name + "' has conflicting types across inputs");
                }
            }
        }
        AttributeSchema out_schema(std::move(attrs));
        Relation out(out_schema);
        for (const auto& r : relations) {
            std::vector<std::optional<size_t>> src(out_schema.size());
            for (size_t j = 0; j < out_schema.size(); ++j) {
                const auto& name = out_schema.attributes()[j].name;
                src[j] = r.schema().has(name) ? std::optional(r.schema().index_of(name)) : std::nullopt;
            }
            for (const auto& row : r.rows()) {
                Row nr(out_schema.size());
                for (size_t j = 0; j < out_schema.size(); ++j)
                    if (src[j]) nr[j] = row[*src[j]];
                out.insert_unchecked(std::move(nr));
            }
        }
        out.canonicalize();
        return out;
    }

    // -- low-level construction ---------------------------------------------

    void insert_row(Row row) {
        if (row.size() != schema_.size())
            throw SchemaMismatch("row arity does not match schema " + schema_.display());
        for (size_t j = 0; j < row.size(); ++j) {
            if (!row[j].is_null() && *row[j].type() != schema_.attributes()[j].type)
                throw TypeMismatch("attribute '" + schema_.attributes()[j].name + "' expects " +
                                   std::string(type_name(schema_.attributes()[j].type)) + ", got " +
                                   row[j].type_display());
        }
        insert_unchecked(std::move(row));
        canonicalize();
    }

    /// Builder API: push rows then finish(). Avoids re-sorting per insert.
    void push_unchecked(Row row) { insert_unchecked(std::move(row)); }
    void finish() { canonicalize(); }

private:
    friend Relation detail::join_impl(const Relation&, const Relation&,
                                      const std::vector<std::pair<std::string, std::string>>&, bool);

    void insert_unchecked(Row row) { rows_.push_back(std::move(row)); }

    // permutation p with this.attr[j] == other.attr[p[j]]
    std::vector<size_t> projection_of(const AttributeSchema& other) const {
        std::vector<size_t> perm;
        perm.reserve(schema_.size());
        for (const auto& a : schema_.attributes()) perm.push_back(other.index_of(a.name));
        return perm;
    }

    static std::vector<std::string> group_key(const AttributeSchema& schema, const Row& row) {
        // textual key in sorted-name order; null tagged to stay distinct
        std::vector<std::string> key;
        NameSet names = schema.names();
        for (const auto& n : names) {
            const Value& v = row[schema.index_of(n)];
            key.push_back(v.is_null() ? "\x01null" : "\x02" + v.to_text());
        }
        return key;
    }

    void canonicalize() {
        std::vector<size_t> order(schema_.size());
        {
            NameSet names = schema_.names();
            size_t k = 0;
            for (const auto& n : names) order[k++] = schema_.index_of(n);
        }
        auto cmp = [&](const Row& a, const Row& b) {
            for (size_t i : order) {
                auto c = a[i].sort_order(b[i]);
                if (c != 0) return c < 0;
            }
            return false;
        };
        auto eq = [&](const Row& a, const Row& b) {
            for (size_t i = 0; i < a.size(); ++i)
                if (!(a[i] == b[i])) return false;
            return true;
        };
        std::sort(rows_.begin(), rows_.end(), cmp);
        rows_.erase(std::unique(rows_.begin(), rows_.end(), eq), rows_.end());
    }

    AttributeSchema schema_;
    std::vector<Row> rows_;
};

namespace detail {

inline Relation join_impl(const Relation& left, const Relation& right,
                          const std::vector<std::pair<std::string, std::string>>& on,
                          bool full_outer) {
    // validate join attributes and type compatibility
    NameSet left_keys, right_keys;
    for (const auto& [l, r] : on) {
        if (left.schema().type_of(l) != right.schema().type_of(r))
            throw TypeMismatch("join attributes '" + l + "' and '" + r + "' have different types");
        left_keys.insert(l);
        right_keys.insert(r);
    }

    // output schema: left as-is (with _l on collisions), join keys carried
    // once under their left names, remaining right attributes (with _r)
    NameSet collisions;
    for (const auto& a : right.schema().attributes())
        if (left.schema().has(a.name) && !(left_keys.count(a.name) && right_keys.count(a.name)))
            collisions.insert(a.name);
    // a left join key colliding with a non-key right attribute (or vice
    // versa) still needs renaming; only matched key pairs share one column
    for (const auto& [l, r] : on)
        if (l == r) collisions.erase(l);

    std::vector<Attribute> attrs;
    for (const auto& a : left.schema().attributes())
        attrs.push_back({collisions.count(a.name) ? a.name + "_l" : a.name, a.type});
    std::vector<size_t> right_extra;  // right column indices appended to output
    for (size_t j = 0; j < right.schema().size(); ++j) {
        const auto& a = right.schema().attributes()[j];
        bool is_matched_key = false;
        for (const auto& [l, r] : on)
            if (r == a.name && l == a.name) is_matched_key = true;
        if (is_matched_key) continue;  // carried by the left column
        bool is_key = right_keys.count(a.name) > 0;
        if (is_key) {
            // renamed key pair (l != r): keep left copy only
            bool paired = false;
            for (const auto& [l, r] : on)
                if (r == a.name) paired = true;
            if (paired) continue;
        }
        attrs.push_back({collisions.count(a.name) ? a.name + "_r" : a.name, a.type});
        right_extra.push_back(j);
    }
    AttributeSchema out_schema{std::move(attrs)};
    Relation out(out_schema);

    auto key_of = [&](const Relation& rel, const Row& row, const NameSet& keys, bool use_left) {
        std::vector<std::string> key;
        for (const auto& [l, r] : on) {
            const auto& name = use_left ? l : r;
            const Value& v = row[rel.schema().index_of(name)];
            key.push_back(v.is_null() ? "\x01null" : "\x02" + v.to_text());
        }
        (void)keys;
        return key;
    };

    std::map<std::vector<std::string>, std::vector<size_t>> right_index;
    for (size_t i = 0; i < right.rows().size(); ++i)
        right_index[key_of(right, right.rows()[i], right_keys, false)].push_back(i);

    auto emit = [&](const Row* lrow, const Row* rrow) {
        Row nr;
        nr.reserve(out_schema.size());
        if (lrow) {
            for (const auto& v : *lrow) nr.push_back(v);
        } else {
            nr.resize(left.schema().size());
            // unmatched right row: key columns take the right-side values
            for (const auto& [l, r] : on)
                nr[left.schema().index_of(l)] = (*rrow)[right.schema().index_of(r)];
        }
        for (size_t j : right_extra) nr.push_back(rrow ? (*rrow)[j] : Value());
        out.insert_unchecked(std::move(nr));
    };

    std::vector<bool> right_matched(right.rows().size(), false);
    for (const auto& lrow : left.rows()) {
        auto it = right_index.find(key_of(left, lrow, left_keys, true));
        bool null_key = std::any_of(on.begin(), on.end(), [&](const auto& p) {
            return lrow[left.schema().index_of(p.first)].is_null();
        });
        if (it != right_index.end() && !null_key) {
            for (size_t ri : it->second) {
                right_matched[ri] = true;
                emit(&lrow, &right.rows()[ri]);
            }
        } else if (full_outer) {
            emit(&lrow, nullptr);
        }
    }
    if (full_outer) {
        for (size_t ri = 0; ri < right.rows().size(); ++ri) {
            bool null_key = std::any_of(on.begin(), on.end(), [&](const auto& p) {
                return right.rows()[ri][right.schema().index_of(p.second)].is_null();
            });
            if (!right_matched[ri] || null_key) {
                // null join keys never match; under full outer they surface
                // as unmatched right rows exactly once
                if (!right_matched[ri]) emit(nullptr, &right.rows()[ri]);
            }
        }
    }
    out.canonicalize();
    return out;
}

}  // namespace detail

// -- group-aggregate ----------------------------------------------------

enum class AggKind { Sum, Count, Min, Max, Avg, Ratio };

/// One aggregation column: SUM(a), COUNT(), MIN(a), MAX(a), AVG(a) or
/// RATIO(SUM(a), SUM(b)), each with an output alias.
struct AggSpec {
    AggKind kind;
    std::string input;        // unused for Count
    std::string denominator;  // Ratio only
    std::string alias;

    static AggSpec sum(std::string a, std::string alias) {
        return {AggKind::Sum, std::move(a), {}, std::move(alias)};
    }
    static AggSpec count(std::string alias) { return {AggKind::Count, {}, {}, std::move(alias)}; }
    static AggSpec min(std::string a, std::string alias) {
        return {AggKind::Min, std::move(a), {}, std::move(alias)};
    }
    static AggSpec max(std::string a, std::string alias) {
        return {AggKind::Max, std::move(a), {}, std::move(alias)};
    }
    static AggSpec avg(std::string a, std::string alias) {
        return {AggKind::Avg, std::move(a), {}, std::move(alias)};
    }
    static AggSpec ratio(std::string num, std::string den, std::string alias) {
        return {AggKind::Ratio, std::move(num), std::move(den), std::move(alias)};
    }
};

namespace detail {

struct Accumulator {
    int64_t i_sum = 0;
    double f_sum = 0;
    int64_t count = 0;      // non-null inputs seen
    Value min_v, max_v;
    int64_t den_i_sum = 0;  // Ratio denominator
    double den_f_sum = 0;
    int64_t den_count = 0;

    void add_sum(const Value& v, bool denominator_side) {
        int64_t& ci = denominator_side ? den_i_sum : i_sum;
        double& cf = denominator_side ? den_f_sum : f_sum;
        int64_t& cn = denominator_side ? den_count : count;
        if (v.is_null()) return;
        ++cn;
        if (v.type() == ValueType::I64) {
            if (__builtin_add_overflow(ci, v.as_i64(), &ci))
                throw IntegerOverflow("SUM overflows 64-bit integer");
            cf += double(v.as_i64());
        } else {
            cf += v.as_f64();
        }
    }
};

inline ValueType numeric_input_type(const AttributeSchema& schema, const std::string& attr) {
    ValueType t = schema.type_of(attr);
    if (t != ValueType::I64 && t != ValueType::F64)
        throw TypeMismatch("aggregate input '" + attr + "' must be numeric, is " + type_name(t));
    return t;
}

}  // namespace detail

/// One output row per distinct key combination present in the input (so an
/// empty input yields an empty result even with no keys). SUM keeps the input
/// type with integer overflow as an error; AVG and RATIO are floats; RATIO is
/// null when the denominator sum is 0 or null.
inline Relation group_aggregate(const Relation& r, const NameSet& keys,
                                const std::vector<AggSpec>& aggs) {
    AttributeSchema key_schema = r.schema().restrict_to(keys);

    std::vector<Attribute> out_attrs(key_schema.attributes());
    NameSet used = keys;
    for (const auto& spec : aggs) {
        if (!used.insert(spec.alias).second)
            throw DuplicateAlias("output alias '" + spec.alias + "' is not unique");
        ValueType t;
        switch (spec.kind) {
            case AggKind::Count: t = ValueType::I64; break;
            case AggKind::Avg:
            case AggKind::Ratio:
                detail::numeric_input_type(r.schema(), spec.input);
                if (spec.kind == AggKind::Ratio) detail::numeric_input_type(r.schema(), spec.denominator);
                t = ValueType::F64;
                break;
            case AggKind::Sum: t = detail::numeric_input_type(r.schema(), spec.input); break;
            case AggKind::Min:
            case AggKind::Max: t = r.schema().type_of(spec.input); break;
        }
        out_attrs.push_back({spec.alias, t});
    }

    auto groups = r.partition(keys);
    Relation out{AttributeSchema(std::move(out_attrs))};
    for (const auto& [key, body] : groups) {
        std::vector<detail::Accumulator> accs(aggs.size());
        for (size_t row = 0; row < body.rows().size(); ++row) {
            for (size_t a = 0; a < aggs.size(); ++a) {
                const auto& spec = aggs[a];
                auto& acc = accs[a];
                switch (spec.kind) {
                    case AggKind::Count: ++acc.count; break;
                    case AggKind::Sum:
                    case AggKind::Avg: acc.add_sum(body.cell(row, spec.input), false); break;
                    case AggKind::Ratio:
                        acc.add_sum(body.cell(row, spec.input), false);
                        acc.add_sum(body.cell(row, spec.denominator), true);
                        break;
                    case AggKind::Min:
                    case AggKind::Max: {
                        const Value& v = body.cell(row, spec.input);
                        if (v.is_null()) break;
                        Value& slot = spec.kind == AggKind::Min ? acc.min_v : acc.max_v;
                        if (slot.is_null()) {
                            slot = v;
                        } else {
                            auto c = v.sort_order(slot);
                            if ((spec.kind == AggKind::Min && c < 0) ||
                                (spec.kind == AggKind::Max && c > 0))
                                slot = v;
                        }
                        break;
                    }
                }
            }
        }
        Row nr = key.values;
        for (size_t a = 0; a < aggs.size(); ++a) {
            const auto& spec = aggs[a];
            const auto& acc = accs[a];
            switch (spec.kind) {
                case AggKind::Count: nr.push_back(Value(acc.count)); break;
                case AggKind::Sum:
                    if (acc.count == 0)
                        nr.push_back(Value());
                    else if (r.schema().type_of(spec.input) == ValueType::I64)
                        nr.push_back(Value(acc.i_sum));
                    else
                        nr.push_back(Value(acc.f_sum));
                    break;
                case AggKind::Avg:
                    nr.push_back(acc.count == 0 ? Value() : Value(acc.f_sum / double(acc.count)));
                    break;
                case AggKind::Ratio:
                    nr.push_back(acc.count == 0 || acc.den_count == 0 || acc.den_f_sum == 0.0
                                     ? Value()
                                     : Value(acc.f_sum / acc.den_f_sum));
                    break;
                case AggKind::Min: nr.push_back(acc.min_v); break;
                case AggKind::Max: nr.push_back(acc.max_v); break;
            }
        }
        out.push_unchecked(std::move(nr));
    }
    out.finish();
    return out;
}

/// Prefixes every row of `rel` with the key tuple; inverse of partition.
inline Relation prepend_key(const Tuple& key, const Relation& rel) {
    std::vector<Attribute> attrs;
    for (const auto& a : key.schema.attributes()) attrs.push_back(a);
    for (const auto& a : rel.schema().attributes()) attrs.push_back(a);
    Relation out{AttributeSchema(std::move(attrs))};
    for (const auto& r : rel.rows()) {
        Row nr = key.values;
        nr.insert(nr.end(), r.begin(), r.end());
        out.push_unchecked(std::move(nr));
    }
    out.finish();
    return out;
}

}  // namespace mra
