#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "mra/error.hpp"

namespace mra {

/// Proleptic Gregorian calendar date. Ordering is chronological.
struct Date {
    int32_t year = 1970;
    uint8_t month = 1;
    uint8_t day = 1;

    auto operator<=>(const Date&) const = default;

    static bool is_leap(int32_t y) {
        return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    }

    static uint8_t days_in_month(int32_t y, uint8_t m) {
        static constexpr uint8_t table[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        if (m == 2 && is_leap(y)) return 29;
        return table[m - 1];
    }

    bool valid() const {
        return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
    }

    /// Days since 1970-01-01; used for midpoint arithmetic only.
    int64_t to_days() const {
        // civil-from-days inverse (Howard Hinnant's algorithm)
        int64_t y = year - (month <= 2 ? 1 : 0);
        int64_t era = (y >= 0 ? y : y - 399) / 400;
        int64_t yoe = y - era * 400;
        int64_t doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
        int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
        return era * 146097 + doe - 719468;
    }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, int(month), int(day));
        return buf;
    }

    static std::optional<Date> parse(const std::string& s) {
        if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
        auto digits = [&](size_t from, size_t n, int& out) {
            out = 0;
            for (size_t i = from; i < from + n; ++i) {
                if (s[i] < '0' || s[i] > '9') return false;
                out = out * 10 + (s[i] - '0');
            }
            return true;
        };
        int y, m, d;
        if (!digits(0, 4, y) || !digits(5, 2, m) || !digits(8, 2, d)) return std::nullopt;
        Date date{y, uint8_t(m), uint8_t(d)};
        if (!date.valid()) return std::nullopt;
        return date;
    }
};

enum class ValueType { Str, I64, F64, DateT, Bool };

inline const char* type_name(ValueType t) {
    switch (t) {
        case ValueType::Str: return "str";
        case ValueType::I64: return "i64";
        case ValueType::F64: return "f64";
        case ValueType::DateT: return "date";
        case ValueType::Bool: return "bool";
    }
    return "?";
}

inline std::optional<ValueType> type_from_name(const std::string& name) {
    if (name == "str") return ValueType::Str;
    if (name == "i64") return ValueType::I64;
    if (name == "f64") return ValueType::F64;
    if (name == "date") return ValueType::DateT;
    if (name == "bool") return ValueType::Bool;
    return std::nullopt;
}

/// A single cell value: text, 64-bit integer, 64-bit float, calendar date,
/// boolean, or null. Semantic comparison is defined within one type only;
/// null compares as unknown in predicates but equals null for grouping.
class Value {
public:
    Value() = default;  // null
    Value(std::string v) : data_(std::move(v)) {}
    Value(const char* v) : data_(std::string(v)) {}
    Value(int64_t v) : data_(v) {}
    Value(int v) : data_(int64_t(v)) {}
    Value(double v) : data_(v) {}
    Value(Date v) : data_(v) {}
    Value(bool v) : data_(v) {}

    static Value null() { return Value(); }

    bool is_null() const { return data_.index() == 0; }
    std::optional<ValueType> type() const {
        switch (data_.index()) {
            case 1: return ValueType::Str;
            case 2: return ValueType::I64;
            case 3: return ValueType::F64;
            case 4: return ValueType::DateT;
            case 5: return ValueType::Bool;
            default: return std::nullopt;
        }
    }

    const std::string& as_str() const { return std::get<1>(data_); }
    int64_t as_i64() const { return std::get<2>(data_); }
    double as_f64() const { return std::get<3>(data_); }
    const Date& as_date() const { return std::get<4>(data_); }
    bool as_bool() const { return std::get<5>(data_); }

    /// Numeric view with i64 -> f64 widening; throws on non-numeric.
    double numeric() const {
        if (data_.index() == 2) return double(std::get<2>(data_));
        if (data_.index() == 3) return std::get<3>(data_);
        throw TypeMismatch("numeric value required, got " + type_display());
    }
    bool is_numeric() const { return data_.index() == 2 || data_.index() == 3; }

    /// Identity equality used by set semantics and grouping: null == null,
    /// values of different types are simply different.
    bool operator==(const Value& other) const { return data_ == other.data_; }

    /// Total order used only for canonical row ordering (nulls first, then by
    /// type tag, then by value). Not a semantic comparison.
    std::strong_ordering sort_order(const Value& other) const {
        if (data_.index() != other.data_.index())
            return data_.index() <=> other.data_.index();
        switch (data_.index()) {
            case 0: return std::strong_ordering::equal;
            case 1: return as_str() <=> other.as_str();
            case 2: return as_i64() <=> other.as_i64();
            case 3: {
                double a = as_f64(), b = other.as_f64();
                if (a < b) return std::strong_ordering::less;
                if (a > b) return std::strong_ordering::greater;
                return std::strong_ordering::equal;
            }
            case 4: {
                auto c = as_date() <=> other.as_date();
                if (c < 0) return std::strong_ordering::less;
                if (c > 0) return std::strong_ordering::greater;
                return std::strong_ordering::equal;
            }
            case 5: return int(as_bool()) <=> int(other.as_bool());
        }
        return std::strong_ordering::equal;
    }

    /// Semantic theta-comparison. Comparison with null returns nullopt
    /// (unknown); numeric values compare across i64/f64; any other cross-type
    /// comparison is a type error.
    std::optional<std::strong_ordering> compare(const Value& other) const {
        if (is_null() || other.is_null()) return std::nullopt;
        if (is_numeric() && other.is_numeric() && data_.index() != other.data_.index()) {
            double a = numeric(), b = other.numeric();
            if (a < b) return std::strong_ordering::less;
            if (a > b) return std::strong_ordering::greater;
            return std::strong_ordering::equal;
        }
        if (data_.index() != other.data_.index())
            throw TypeMismatch("cannot compare " + type_display() + " with " + other.type_display());
        return sort_order(other);
    }

    size_t hash() const {
        size_t seed = data_.index();
        auto mix = [&](size_t h) { seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); };
        switch (data_.index()) {
            case 1: mix(std::hash<std::string>{}(as_str())); break;
            case 2: mix(std::hash<int64_t>{}(as_i64())); break;
            case 3: mix(std::hash<double>{}(as_f64())); break;
            case 4: mix(std::hash<int64_t>{}(as_date().to_days())); break;
            case 5: mix(std::hash<bool>{}(as_bool())); break;
            default: break;
        }
        return seed;
    }

    std::string type_display() const {
        auto t = type();
        return t ? type_name(*t) : "null";
    }

    /// Text form used by CSV and diagnostics. Null renders as the empty
    /// string; callers that need to distinguish must check is_null().
    std::string to_text() const {
        switch (data_.index()) {
            case 0: return "";
            case 1: return as_str();
            case 2: return std::to_string(as_i64());
            case 3: {
                char buf[32];
                auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), as_f64());
                (void)ec;
                return std::string(buf, p);
            }
            case 4: return as_date().to_string();
            case 5: return as_bool() ? "true" : "false";
        }
        return "";
    }

    /// Parses the CSV text form of a value of known type; empty text is null.
    static Value from_text(const std::string& text, ValueType t) {
        if (text.empty()) return Value();
        switch (t) {
            case ValueType::Str: return Value(text);
            case ValueType::I64: {
                int64_t out = 0;
                auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
                if (ec != std::errc() || p != text.data() + text.size())
                    throw TypeMismatch("bad i64 literal: '" + text + "'");
                return Value(out);
            }
            case ValueType::F64: {
                double out = 0;
                auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
                if (ec != std::errc() || p != text.data() + text.size())
                    throw TypeMismatch("bad f64 literal: '" + text + "'");
                return Value(out);
            }
            case ValueType::DateT: {
                auto d = Date::parse(text);
                if (!d) throw TypeMismatch("bad date literal: '" + text + "' (expected YYYY-MM-DD)");
                return Value(*d);
            }
            case ValueType::Bool: {
                if (text == "true") return Value(true);
                if (text == "false") return Value(false);
                throw TypeMismatch("bad bool literal: '" + text + "'");
            }
        }
        throw TypeMismatch("unknown value type");
    }

private:
    std::variant<std::monostate, std::string, int64_t, double, Date, bool> data_;
};

/// Coerces a constant to the type expected by its comparison context: text
/// parses to date when a date is expected, i64 widens to f64. Anything else
/// must already match.
inline Value coerce_to(const Value& v, ValueType target) {
    if (v.is_null()) return v;
    auto t = *v.type();
    if (t == target) return v;
    if (t == ValueType::Str && target == ValueType::DateT) {
        auto d = Date::parse(v.as_str());
        if (!d) throw TypeMismatch("bad date literal: '" + v.as_str() + "'");
        return Value(*d);
    }
    if (t == ValueType::I64 && target == ValueType::F64) return Value(double(v.as_i64()));
    throw TypeMismatch(std::string("cannot use ") + type_name(t) + " value where " +
                       type_name(target) + " is expected");
}

}  // namespace mra
