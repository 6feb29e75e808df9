#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "mra/relation.hpp"

namespace mra {

using Json = nlohmann::ordered_json;

/// Row-level scalar expression language: column references, literals,
/// arithmetic (+,-,*,/), theta-comparisons, and boolean connectives.
/// Any theta-comparison involving null yields false; arithmetic propagates
/// null. Division always produces f64.
namespace expr {

enum class Op {
    Col, Lit,
    Add, Sub, Mul, Div, Neg,
    Eq, Ne, Lt, Le, Gt, Ge,
    And, Or, Not,
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    Op op;
    std::string column;       // Col
    Value literal;            // Lit
    std::vector<Expr> args;
};

inline Expr col(std::string name) {
    return std::make_shared<Node>(Node{Op::Col, std::move(name), {}, {}});
}
inline Expr lit(Value v) { return std::make_shared<Node>(Node{Op::Lit, {}, std::move(v), {}}); }
inline Expr make(Op op, std::vector<Expr> args) {
    return std::make_shared<Node>(Node{op, {}, {}, std::move(args)});
}

inline bool is_comparison(Op op) { return op >= Op::Eq && op <= Op::Ge; }
inline bool is_arithmetic(Op op) { return op >= Op::Add && op <= Op::Neg; }

inline const char* op_name(Op op) {
    switch (op) {
        case Op::Add: return "+";
        case Op::Sub: return "-";
        case Op::Mul: return "*";
        case Op::Div: return "/";
        case Op::Neg: return "neg";
        case Op::Eq: return "=";
        case Op::Ne: return "!=";
        case Op::Lt: return "<";
        case Op::Le: return "<=";
        case Op::Gt: return ">";
        case Op::Ge: return ">=";
        case Op::And: return "and";
        case Op::Or: return "or";
        case Op::Not: return "not";
        default: return "?";
    }
}

/// Static result type against a schema; unknown columns and ill-typed
/// operations throw. A null literal has no type (nullopt) and adapts to its
/// context.
inline std::optional<ValueType> infer_type(const Expr& e, const AttributeSchema& schema) {
    switch (e->op) {
        case Op::Col: return schema.type_of(e->column);
        case Op::Lit: return e->literal.type();
        case Op::Neg: {
            auto t = infer_type(e->args[0], schema);
            if (t && *t != ValueType::I64 && *t != ValueType::F64)
                throw TypeMismatch("negation requires a numeric operand");
            return t;
        }
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            auto l = infer_type(e->args[0], schema);
            auto r = infer_type(e->args[1], schema);
            for (auto t : {l, r})
                if (t && *t != ValueType::I64 && *t != ValueType::F64)
                    throw TypeMismatch(std::string("arithmetic requires numeric operands, got ") +
                                       type_name(*t));
            if (e->op == Op::Div) return ValueType::F64;
            if (l == ValueType::F64 || r == ValueType::F64) return ValueType::F64;
            return ValueType::I64;
        }
        case Op::Eq:
        case Op::Ne:
        case Op::Lt:
        case Op::Le:
        case Op::Gt:
        case Op::Ge: {
            auto l = infer_type(e->args[0], schema);
            auto r = infer_type(e->args[1], schema);
            if (l && r && !(*l == *r)) {
                bool numeric_mix = (*l == ValueType::I64 || *l == ValueType::F64) &&
                                   (*r == ValueType::I64 || *r == ValueType::F64);
                bool date_text = (*l == ValueType::DateT && *r == ValueType::Str &&
                                  e->args[1]->op == Op::Lit) ||
                                 (*r == ValueType::DateT && *l == ValueType::Str &&
                                  e->args[0]->op == Op::Lit);
                if (!numeric_mix && !date_text)
                    throw TypeMismatch(std::string("cannot compare ") + type_name(*l) + " with " +
                                       type_name(*r));
            }
            return ValueType::Bool;
        }
        case Op::And:
        case Op::Or:
        case Op::Not: {
            for (const auto& a : e->args) {
                auto t = infer_type(a, schema);
                if (t && *t != ValueType::Bool)
                    throw TypeMismatch("boolean connective over non-boolean operand");
            }
            return ValueType::Bool;
        }
    }
    return std::nullopt;
}

inline bool compare_values(Op op, const Value& l, const Value& r) {
    Value rhs = r;
    if (!l.is_null() && !r.is_null()) {
        // date/text literal coercion mirrors infer_type
        if (l.type() == ValueType::DateT && r.type() == ValueType::Str) rhs = coerce_to(r, ValueType::DateT);
        if (r.type() == ValueType::DateT && l.type() == ValueType::Str)
            return compare_values(op, coerce_to(l, ValueType::DateT), r);
    }
    auto ord = l.compare(rhs);
    if (!ord) return false;  // comparison with null is false, not unknown
    switch (op) {
        case Op::Eq: return *ord == 0;
        case Op::Ne: return *ord != 0;
        case Op::Lt: return *ord < 0;
        case Op::Le: return *ord <= 0;
        case Op::Gt: return *ord > 0;
        case Op::Ge: return *ord >= 0;
        default: throw InvalidArgument("not a comparison");
    }
}

inline Value eval(const Expr& e, const AttributeSchema& schema, const Row& row) {
    switch (e->op) {
        case Op::Col: return row[schema.index_of(e->column)];
        case Op::Lit: return e->literal;
        case Op::Neg: {
            Value v = eval(e->args[0], schema, row);
            if (v.is_null()) return v;
            if (v.type() == ValueType::I64) return Value(-v.as_i64());
            return Value(-v.numeric());
        }
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            Value l = eval(e->args[0], schema, row);
            Value r = eval(e->args[1], schema, row);
            if (l.is_null() || r.is_null()) return Value();
            if (e->op == Op::Div) {
                double d = r.numeric();
                if (d == 0.0) return Value();  // division by zero is null
                return Value(l.numeric() / d);
            }
            if (l.type() == ValueType::I64 && r.type() == ValueType::I64) {
                int64_t a = l.as_i64(), b = r.as_i64(), out = 0;
                bool overflow = e->op == Op::Add   ? __builtin_add_overflow(a, b, &out)
                                : e->op == Op::Sub ? __builtin_sub_overflow(a, b, &out)
                                                   : __builtin_mul_overflow(a, b, &out);
                if (overflow) throw IntegerOverflow("integer arithmetic overflows");
                return Value(out);
            }
            double a = l.numeric(), b = r.numeric();
            switch (e->op) {
                case Op::Add: return Value(a + b);
                case Op::Sub: return Value(a - b);
                default: return Value(a * b);
            }
        }
        case Op::Eq:
        case Op::Ne:
        case Op::Lt:
        case Op::Le:
        case Op::Gt:
        case Op::Ge:
            return Value(compare_values(e->op, eval(e->args[0], schema, row),
                                        eval(e->args[1], schema, row)));
        case Op::And: {
            for (const auto& a : e->args) {
                Value v = eval(a, schema, row);
                if (v.is_null() || !v.as_bool()) return Value(false);
            }
            return Value(true);
        }
        case Op::Or: {
            for (const auto& a : e->args) {
                Value v = eval(a, schema, row);
                if (!v.is_null() && v.as_bool()) return Value(true);
            }
            return Value(false);
        }
        case Op::Not: {
            Value v = eval(e->args[0], schema, row);
            return Value(v.is_null() ? true : !v.as_bool());
        }
    }
    return Value();
}

/// True iff the expression evaluates to boolean true for the row.
inline bool holds(const Expr& e, const AttributeSchema& schema, const Row& row) {
    Value v = eval(e, schema, row);
    return !v.is_null() && v.type() == ValueType::Bool && v.as_bool();
}

// -- canonical JSON form --------------------------------------------------

inline Json value_to_json(const Value& v) {
    if (v.is_null()) return nullptr;
    switch (*v.type()) {
        case ValueType::Str: return v.as_str();
        case ValueType::I64: return v.as_i64();
        case ValueType::F64: return v.as_f64();
        case ValueType::DateT: return v.as_date().to_string();
        case ValueType::Bool: return v.as_bool();
    }
    return nullptr;
}

/// JSON scalars map back as: integer -> i64, float -> f64, bool -> bool,
/// string -> str (dates stay textual until context coercion), null -> null.
inline Value value_from_json(const Json& j) {
    if (j.is_null()) return Value();
    if (j.is_boolean()) return Value(j.get<bool>());
    if (j.is_number_integer()) return Value(j.get<int64_t>());
    if (j.is_number_float()) return Value(j.get<double>());
    if (j.is_string()) return Value(j.get<std::string>());
    throw ParseError("expected a scalar literal, got " + j.dump());
}

inline Json to_json(const Expr& e) {
    switch (e->op) {
        case Op::Col: return Json{{"col", e->column}};
        case Op::Lit: return Json{{"lit", value_to_json(e->literal)}};
        default: {
            Json args = Json::array();
            for (const auto& a : e->args) args.push_back(to_json(a));
            return Json{{"op", op_name(e->op)}, {"args", std::move(args)}};
        }
    }
}

inline Expr from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("expression node must be an object: " + j.dump());
    if (j.contains("col")) return col(j.at("col").get<std::string>());
    if (j.contains("lit")) return lit(value_from_json(j.at("lit")));
    if (!j.contains("op")) throw ParseError("expression node missing 'op': " + j.dump());
    std::string name = j.at("op").get<std::string>();
    static const std::map<std::string, Op> ops = {
        {"+", Op::Add}, {"-", Op::Sub}, {"*", Op::Mul}, {"/", Op::Div}, {"neg", Op::Neg},
        {"=", Op::Eq},  {"!=", Op::Ne}, {"<", Op::Lt},  {"<=", Op::Le}, {">", Op::Gt},
        {">=", Op::Ge}, {"and", Op::And}, {"or", Op::Or}, {"not", Op::Not},
    };
    auto it = ops.find(name);
    if (it == ops.end()) throw ParseError("unknown expression operator '" + name + "'");
    std::vector<Expr> args;
    for (const auto& a : j.at("args")) args.push_back(from_json(a));
    size_t want = it->second == Op::Not || it->second == Op::Neg ? 1 : 2;
    bool variadic = it->second == Op::And || it->second == Op::Or;
    if (!variadic && args.size() != want)
        throw ParseError(std::string("operator '") + name + "' expects " + std::to_string(want) +
                         " argument(s)");
    if (variadic && args.size() < 2)
        throw ParseError(std::string("operator '") + name + "' expects at least 2 arguments");
    return make(it->second, std::move(args));
}

}  // namespace expr

// -- lexer shared by the infix predicate parsers ---------------------------

namespace lex {

enum class Kind { Ident, Number, String, Symbol, End };

struct Token {
    Kind kind;
    std::string text;
    size_t pos;
};

inline std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    size_t i = 0;
    auto error_at = [&](const std::string& msg) {
        throw ParseError(msg + " at offset " + std::to_string(i) + " in '" + src + "'");
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            out.push_back({Kind::Ident, src.substr(start, i - start), start});
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '.' && i + 1 < src.size() &&
                    std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) ||
                                      src[i] == '.' || src[i] == 'e' || src[i] == 'E' ||
                                      ((src[i] == '+' || src[i] == '-') && i > start &&
                                       (src[i - 1] == 'e' || src[i - 1] == 'E'))))
                ++i;
            out.push_back({Kind::Number, src.substr(start, i - start), start});
        } else if (c == '\'' || c == '"') {
            ++i;
            std::string text;
            while (i < src.size() && src[i] != c) text += src[i++];
            if (i == src.size()) error_at("unterminated string literal");
            ++i;
            out.push_back({Kind::String, std::move(text), start});
        } else {
            static const char* two[] = {"<=", ">=", "!=", "=="};
            std::string sym(1, c);
            for (const char* t : two) {
                if (src.compare(i, 2, t) == 0) {
                    sym = t;
                    break;
                }
            }
            if (std::string("+-*/()<>=!,[].").find(c) == std::string::npos)
                error_at(std::string("unexpected character '") + c + "'");
            i += sym.size();
            out.push_back({Kind::Symbol, std::move(sym), start});
        }
    }
    out.push_back({Kind::End, "", src.size()});
    return out;
}

struct Cursor {
    std::vector<Token> tokens;
    size_t at = 0;
    std::string src;

    const Token& peek() const { return tokens[at]; }
    Token next() { return tokens[at++]; }
    bool accept_symbol(const std::string& s) {
        if (tokens[at].kind == Kind::Symbol && tokens[at].text == s) {
            ++at;
            return true;
        }
        return false;
    }
    bool accept_keyword(const std::string& kw) {
        if (tokens[at].kind == Kind::Ident && tokens[at].text == kw) {
            ++at;
            return true;
        }
        return false;
    }
    void expect_symbol(const std::string& s) {
        if (!accept_symbol(s))
            throw ParseError("expected '" + s + "' at offset " + std::to_string(peek().pos) +
                             " in '" + src + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(peek().pos) + " in '" + src + "'");
    }
};

inline Value number_literal(const std::string& text) {
    if (text.find_first_of(".eE") == std::string::npos) {
        int64_t v = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec == std::errc() && p == text.data() + text.size()) return Value(v);
    }
    double d = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (ec != std::errc() || p != text.data() + text.size())
        throw ParseError("bad numeric literal '" + text + "'");
    return Value(d);
}

}  // namespace lex

namespace expr {

namespace detail {

// grammar: or := and (OR and)* ; and := not (AND not)* ; not := NOT not | cmp
// cmp := add ((= != < <= > >=) add)? ; add := mul ((+|-) mul)* ;
// mul := unary ((*|/) unary)* ; unary := - unary | primary
inline Expr parse_or(lex::Cursor& cur);

inline Expr parse_primary(lex::Cursor& cur) {
    const auto& t = cur.peek();
    if (cur.accept_symbol("(")) {
        Expr e = parse_or(cur);
        cur.expect_symbol(")");
        return e;
    }
    if (t.kind == lex::Kind::Number) return lit(lex::number_literal(cur.next().text));
    if (t.kind == lex::Kind::String) return lit(Value(cur.next().text));
    if (t.kind == lex::Kind::Ident) {
        std::string word = cur.next().text;
        if (word == "true") return lit(Value(true));
        if (word == "false") return lit(Value(false));
        if (word == "null") return lit(Value());
        if (cur.peek().kind == lex::Kind::Symbol && cur.peek().text == "(")
            cur.fail("aggregate calls are not allowed in row expressions ('" + word + "')");
        return col(std::move(word));
    }
    cur.fail("expected an expression");
}

inline Expr parse_unary(lex::Cursor& cur) {
    if (cur.accept_symbol("-")) return make(Op::Neg, {parse_unary(cur)});
    return parse_primary(cur);
}

inline Expr parse_mul(lex::Cursor& cur) {
    Expr e = parse_unary(cur);
    while (true) {
        if (cur.accept_symbol("*"))
            e = make(Op::Mul, {e, parse_unary(cur)});
        else if (cur.accept_symbol("/"))
            e = make(Op::Div, {e, parse_unary(cur)});
        else
            return e;
    }
}

inline Expr parse_add(lex::Cursor& cur) {
    Expr e = parse_mul(cur);
    while (true) {
        if (cur.accept_symbol("+"))
            e = make(Op::Add, {e, parse_mul(cur)});
        else if (cur.accept_symbol("-"))
            e = make(Op::Sub, {e, parse_mul(cur)});
        else
            return e;
    }
}

inline Expr parse_cmp(lex::Cursor& cur) {
    Expr e = parse_add(cur);
    static const std::pair<const char*, Op> cmps[] = {
        {"=", Op::Eq}, {"==", Op::Eq}, {"!=", Op::Ne},
        {"<=", Op::Le}, {">=", Op::Ge}, {"<", Op::Lt}, {">", Op::Gt},
    };
    for (const auto& [sym, op] : cmps)
        if (cur.accept_symbol(sym)) return make(op, {e, parse_add(cur)});
    return e;
}

inline Expr parse_not(lex::Cursor& cur) {
    if (cur.accept_keyword("NOT") || cur.accept_keyword("not"))
        return make(Op::Not, {parse_not(cur)});
    return parse_cmp(cur);
}

inline Expr parse_and(lex::Cursor& cur) {
    Expr e = parse_not(cur);
    std::vector<Expr> args{e};
    while (cur.accept_keyword("AND") || cur.accept_keyword("and")) args.push_back(parse_not(cur));
    return args.size() == 1 ? e : make(Op::And, std::move(args));
}

inline Expr parse_or(lex::Cursor& cur) {
    Expr e = parse_and(cur);
    std::vector<Expr> args{e};
    while (cur.accept_keyword("OR") || cur.accept_keyword("or")) args.push_back(parse_and(cur));
    return args.size() == 1 ? e : make(Op::Or, std::move(args));
}

}  // namespace detail

/// Parses the infix convenience form of a row expression / predicate.
inline Expr parse(const std::string& text) {
    lex::Cursor cur{lex::tokenize(text), 0, text};
    Expr e = detail::parse_or(cur);
    if (cur.peek().kind != lex::Kind::End) cur.fail("trailing input after expression");
    return e;
}

}  // namespace expr

/// select with a row predicate; the predicate is type-checked first.
inline Relation select(const Relation& r, const expr::Expr& pred) {
    auto t = expr::infer_type(pred, r.schema());
    if (t && *t != ValueType::Bool) throw TypeMismatch("selection predicate must be boolean");
    return r.select([&](const Relation& rel, size_t i) {
        return expr::holds(pred, rel.schema(), rel.rows()[i]);
    });
}

struct MutateSpec {
    expr::Expr fn;
    std::string alias;
};

/// Adds computed columns row-wise; existing columns stay intact.
inline Relation mutate(const Relation& r, const std::vector<MutateSpec>& fns) {
    std::vector<Attribute> attrs(r.schema().attributes());
    NameSet used = r.schema().names();
    for (const auto& f : fns) {
        if (!used.insert(f.alias).second)
            throw DuplicateAlias("mutate alias '" + f.alias + "' is not unique");
        auto t = expr::infer_type(f.fn, r.schema());
        if (!t) throw TypeMismatch("cannot infer a type for mutate expression '" + f.alias + "'");
        attrs.push_back({f.alias, *t});
    }
    Relation out{AttributeSchema(std::move(attrs))};
    for (const auto& row : r.rows()) {
        Row nr = row;
        for (const auto& f : fns) nr.push_back(expr::eval(f.fn, r.schema(), row));
        out.push_unchecked(std::move(nr));
    }
    out.finish();
    return out;
}

}  // namespace mra
