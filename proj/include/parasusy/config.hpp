#ifndef PARASUSY_CONFIG_HPP
#define PARASUSY_CONFIG_HPP

// Run configuration: a flat file of `key = value` lines.
//
//   variant  = "RSK" | "BD" | "OSSQM"
//   p        = 2
//   lambda   = 3                      # optional, must equal p+1
//   alpha    = [1, -1/2, -1/2]        # C_lambda family ...
//   F_expr   = "n"                    # ... or a user structure function
//   f        = ["1", "n + 1"]         # RSK: f_1..f_p
//   g        = "1"                    # BD
//   f_p      = "1"                    # OSSQM
//   eps      = ["1"]                  # BD: eps_2..eps_p, OSSQM: eps_1..eps_{p-1}
//   bd_constant_f = false             # BD with f_i = 1
//   D        = 40
//   tol      = 1e-9
//   tol_exact = 1e-12
//   mode     = "exact" | "float"
//
// Strings are double-quoted; array elements and scalars may also be bare
// tokens. `#` starts a comment outside strings.

#include "parasusy/exprlang.hpp"
#include "parasusy/structure.hpp"
#include "parasusy/variants.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace parasusy {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& key_path, const std::string& message)
        : std::runtime_error(key_path.empty() ? message : key_path + ": " + message)
        , key_path_(key_path)
    {
    }
    const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

struct ConfigValue {
    std::string scalar;                   // text of a scalar value
    bool quoted = false;
    std::optional<std::vector<ConfigValue>> items;
    int line = 0;
};

using ConfigTable = std::map<std::string, ConfigValue>;

namespace detail {

class ConfigReader {
public:
    ConfigReader(const std::string& text, int line) : text_(text), line_(line) {}

    ConfigValue value(const std::string& key)
    {
        skip();
        ConfigValue v;
        v.line = line_;
        if (pos_ < text_.size() && text_[pos_] == '[') {
            ++pos_;
            v.items.emplace();
            skip();
            if (pos_ < text_.size() && text_[pos_] == ']') {
                ++pos_;
                return v;
            }
            for (;;) {
                v.items->push_back(scalar(key + "[" + std::to_string(v.items->size()) + "]"));
                skip();
                if (pos_ < text_.size() && text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (pos_ < text_.size() && text_[pos_] == ']') {
                    ++pos_;
                    break;
                }
                throw ConfigError(key, "line " + std::to_string(line_) + ": expected ',' or ']' in array");
            }
            return v;
        }
        return scalar(key);
    }

    void finish(const std::string& key)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] != '#')
            throw ConfigError(key, "line " + std::to_string(line_) + ": trailing characters after value");
    }

private:
    void skip()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    ConfigValue scalar(const std::string& key)
    {
        skip();
        ConfigValue v;
        v.line = line_;
        if (pos_ < text_.size() && text_[pos_] == '"') {
            ++pos_;
            v.quoted = true;
            while (pos_ < text_.size() && text_[pos_] != '"') v.scalar.push_back(text_[pos_++]);
            if (pos_ >= text_.size())
                throw ConfigError(key, "line " + std::to_string(line_) + ": unterminated string");
            ++pos_;
            return v;
        }
        while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '#')
            v.scalar.push_back(text_[pos_++]);
        while (!v.scalar.empty() && (v.scalar.back() == ' ' || v.scalar.back() == '\t')) v.scalar.pop_back();
        if (v.scalar.empty()) throw ConfigError(key, "line " + std::to_string(line_) + ": missing value");
        return v;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_;
};

} // namespace detail

inline ConfigTable parse_config_text(const std::string& text)
{
    ConfigTable table;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", "line " + std::to_string(number) + ": expected 'key = value'");
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        if (key.empty()) throw ConfigError("", "line " + std::to_string(number) + ": empty key");
        if (table.count(key)) throw ConfigError(key, "line " + std::to_string(number) + ": duplicate key");
        const std::string rest = line.substr(eq + 1);
        detail::ConfigReader reader(rest, number);
        ConfigValue v = reader.value(key);
        reader.finish(key);
        table.emplace(std::move(key), std::move(v));
    }
    return table;
}

enum class ArithmeticMode { Float, Exact };

struct RunConfig {
    VariantConfig variant;
    double tol = 1e-9;
    double tol_exact = 1e-12;
    ArithmeticMode mode = ArithmeticMode::Exact;
    std::vector<std::string> alpha_text;  // as written, for reports
    std::string F_expr_text;
    std::vector<std::string> coefficient_text;
    std::vector<std::string> eps_text;
};

/// Largest ladder weight among the relations checked for this variant.
inline int max_ladder_weight(Variant v, int p) { return v == Variant::OSSQM ? 2 * p : p + 1; }

namespace detail {

inline const ConfigValue* find_key(const ConfigTable& t, const std::string& key)
{
    const auto it = t.find(key);
    return it == t.end() ? nullptr : &it->second;
}

inline const std::string& scalar_of(const ConfigValue& v, const std::string& key)
{
    if (v.items) throw ConfigError(key, "expected a scalar, got an array");
    return v.scalar;
}

inline long long integer_of(const ConfigValue& v, const std::string& key)
{
    const std::string& s = scalar_of(v, key);
    try {
        std::size_t used = 0;
        const long long x = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + s + "'");
    }
}

inline double real_of(const ConfigValue& v, const std::string& key)
{
    const std::string& s = scalar_of(v, key);
    try {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + s + "'");
    }
}

inline bool bool_of(const ConfigValue& v, const std::string& key)
{
    const std::string& s = scalar_of(v, key);
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError(key, "expected true or false, got '" + s + "'");
}

inline Expression expression_of(const std::string& text, const std::string& key)
{
    try {
        return parse_expression(text);
    } catch (const ParseError& e) {
        throw ConfigError(key, std::string("expression '") + text + "' " + e.what());
    }
}

inline std::vector<std::string> string_list(const ConfigValue& v, const std::string& key)
{
    if (!v.items) throw ConfigError(key, "expected an array");
    std::vector<std::string> out;
    for (const auto& item : *v.items) out.push_back(item.scalar);
    return out;
}

} // namespace detail

/// Reads and checks a configuration. Syntax and schema problems raise
/// ConfigError; invalid physics parameters raise ParameterError.
inline RunConfig load_run_config(const ConfigTable& t)
{
    static const std::vector<std::string> known = {"variant", "p",  "lambda",        "alpha", "F_expr",    "f",
                                                   "g",       "f_p", "eps",          "D",     "tol",       "tol_exact",
                                                   "mode",    "bd_constant_f"};
    for (const auto& [key, value] : t)
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError(key, "unknown key (line " + std::to_string(value.line) + ")");

    auto require = [&](const std::string& key) -> const ConfigValue& {
        const ConfigValue* v = detail::find_key(t, key);
        if (!v) throw ConfigError(key, "missing required key");
        return *v;
    };

    RunConfig rc;
    VariantConfig& cfg = rc.variant;
    try {
        cfg.variant = parse_variant(detail::scalar_of(require("variant"), "variant"));
    } catch (const ParameterError& e) {
        throw ConfigError("variant", e.what());
    }
    cfg.p = static_cast<int>(detail::integer_of(require("p"), "p"));
    if (cfg.p < 2) throw ConfigError("p", "must be >= 2");
    const int lambda = cfg.p + 1;
    if (const auto* v = detail::find_key(t, "lambda")) {
        if (detail::integer_of(*v, "lambda") != lambda)
            throw ConfigError("lambda", "must equal p+1 = " + std::to_string(lambda));
    }

    const auto* alpha = detail::find_key(t, "alpha");
    const auto* fexpr = detail::find_key(t, "F_expr");
    if (alpha && fexpr) throw ConfigError("F_expr", "give either alpha or F_expr, not both");
    if (!alpha && !fexpr) throw ConfigError("alpha", "missing structure function: set alpha or F_expr");
    if (alpha) {
        rc.alpha_text = detail::string_list(*alpha, "alpha");
        std::vector<Rational> values;
        for (std::size_t k = 0; k < rc.alpha_text.size(); ++k) {
            try {
                values.push_back(parse_rational(rc.alpha_text[k]));
            } catch (const std::invalid_argument& e) {
                throw ConfigError("alpha[" + std::to_string(k) + "]", e.what());
            }
        }
        cfg.F = StructureSpec::clambda(validate_clambda(lambda, values));
    } else {
        rc.F_expr_text = detail::scalar_of(*fexpr, "F_expr");
        cfg.F = StructureSpec::user(detail::expression_of(rc.F_expr_text, "F_expr"), lambda);
    }

    if (const auto* v = detail::find_key(t, "D")) cfg.dim = static_cast<int>(detail::integer_of(*v, "D"));
    if (const auto* v = detail::find_key(t, "tol")) rc.tol = detail::real_of(*v, "tol");
    if (const auto* v = detail::find_key(t, "tol_exact")) rc.tol_exact = detail::real_of(*v, "tol_exact");
    if (!(rc.tol > 0)) throw ConfigError("tol", "must be positive");
    if (!(rc.tol_exact > 0)) throw ConfigError("tol_exact", "must be positive");
    if (const auto* v = detail::find_key(t, "mode")) {
        const std::string& m = detail::scalar_of(*v, "mode");
        if (m == "float")
            rc.mode = ArithmeticMode::Float;
        else if (m == "exact")
            rc.mode = ArithmeticMode::Exact;
        else
            throw ConfigError("mode", "expected \"float\" or \"exact\", got '" + m + "'");
    }
    if (const auto* v = detail::find_key(t, "bd_constant_f")) cfg.bd_constant_f = detail::bool_of(*v, "bd_constant_f");
    if (cfg.bd_constant_f && cfg.variant != Variant::BD)
        throw ConfigError("bd_constant_f", "only meaningful for the BD variant");

    auto forbid = [&](const std::string& key) {
        if (detail::find_key(t, key))
            throw ConfigError(key, "not used by the " + to_string(cfg.variant) + " variant");
    };

    switch (cfg.variant) {
    case Variant::RSK: {
        forbid("g");
        forbid("f_p");
        forbid("eps");
        rc.coefficient_text = detail::string_list(require("f"), "f");
        if (static_cast<int>(rc.coefficient_text.size()) != cfg.p)
            throw ConfigError("f", "expected p = " + std::to_string(cfg.p) + " expressions, got "
                                       + std::to_string(rc.coefficient_text.size()));
        for (std::size_t k = 0; k < rc.coefficient_text.size(); ++k)
            cfg.f.push_back(detail::expression_of(rc.coefficient_text[k], "f[" + std::to_string(k) + "]"));
        break;
    }
    case Variant::BD:
    case Variant::OSSQM: {
        forbid("f");
        const std::string key = cfg.variant == Variant::BD ? "g" : "f_p";
        forbid(cfg.variant == Variant::BD ? "f_p" : "g");
        if (const auto* v = detail::find_key(t, key)) {
            rc.coefficient_text = {detail::scalar_of(*v, key)};
            (cfg.variant == Variant::BD ? cfg.g : cfg.f_top) = detail::expression_of(rc.coefficient_text[0], key);
        } else if (!cfg.bd_constant_f) {
            throw ConfigError(key, "missing required key");
        }
        if (const auto* v = detail::find_key(t, "eps")) {
            rc.eps_text = detail::string_list(*v, "eps");
            if (static_cast<int>(rc.eps_text.size()) != cfg.p - 1)
                throw ConfigError("eps", "expected p-1 = " + std::to_string(cfg.p - 1) + " expressions");
            for (std::size_t k = 0; k < rc.eps_text.size(); ++k)
                cfg.eps.push_back(detail::expression_of(rc.eps_text[k], "eps[" + std::to_string(k) + "]"));
        }
        break;
    }
    }

    const int weight = max_ladder_weight(cfg.variant, cfg.p);
    if (cfg.dim <= weight)
        throw ConfigError("D", "must exceed the largest ladder weight " + std::to_string(weight) + ", got "
                                   + std::to_string(cfg.dim));
    validate_config(cfg);
    return rc;
}

inline RunConfig load_run_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_run_config(parse_config_text(buffer.str()));
}

} // namespace parasusy

#endif // PARASUSY_CONFIG_HPP
