#include "config.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace quasibif::cli {

namespace {

const char* type_name(const Value& v) {
    if (v.is_number()) return "number";
    if (v.is_string()) return "string";
    if (v.is_bool()) return "boolean";
    if (v.is_array()) return "array";
    return "table";
}

[[noreturn]] void type_error(std::string_view key, const Value& v, const char* want) {
    throw ConfigError(fmt::format("'{}' must be a {}, got a {}", key, want, type_name(v)));
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Table document() {
        Table root;
        Table* current = &root;
        for (;;) {
            skip(true);
            if (done()) break;
            if (peek() == '[') {
                ++i_;
                current = &root;
                for (;;) {
                    skip(false);
                    const std::string k = key();
                    auto [it, inserted] = current->try_emplace(k, Value{Table{}});
                    if (!inserted && !it->second.is_table()) fail(fmt::format("'{}' is not a table", k));
                    current = &std::get<Table>(it->second.data);
                    skip(false);
                    if (peek() == '.') {
                        ++i_;
                        continue;
                    }
                    expect(']');
                    break;
                }
                end_of_line();
                continue;
            }
            const std::string k = key();
            skip(false);
            expect('=');
            skip(false);
            Value v = value();
            if (!current->emplace(k, std::move(v)).second) fail(fmt::format("duplicate key '{}'", k));
            end_of_line();
        }
        return root;
    }

    Value single() {
        skip(true);
        Value v = value();
        skip(true);
        if (!done()) fail("trailing characters after value");
        return v;
    }

private:
    bool done() const { return i_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[i_]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(fmt::format("line {}: {}", line_, what));
    }

    void expect(char c) {
        if (peek() != c) fail(fmt::format("expected '{}'", c));
        ++i_;
    }

    void skip(bool newlines) {
        while (!done()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                ++i_;
            } else if (c == '#') {
                while (!done() && peek() != '\n') ++i_;
            } else if (c == '\n' && newlines) {
                ++line_;
                ++i_;
            } else {
                break;
            }
        }
    }

    void end_of_line() {
        skip(false);
        if (done()) return;
        if (peek() != '\n') fail("expected end of line");
        ++line_;
        ++i_;
    }

    std::string key() {
        if (peek() == '"') return quoted();
        const std::size_t start = i_;
        while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++i_;
        if (i_ == start) fail("expected a key");
        return std::string(s_.substr(start, i_ - start));
    }

    std::string quoted() {
        expect('"');
        std::string out;
        while (!done() && peek() != '"') {
            char c = s_[i_++];
            if (c == '\n') fail("unterminated string");
            if (c == '\\') {
                if (done()) fail("unterminated escape");
                const char e = s_[i_++];
                switch (e) {
                    case 'n': c = '\n'; break;
                    case 't': c = '\t'; break;
                    case '"': c = '"'; break;
                    case '\\': c = '\\'; break;
                    default: fail(fmt::format("unknown escape '\\{}'", e));
                }
            }
            out.push_back(c);
        }
        expect('"');
        return out;
    }

    Value value() {
        const char c = peek();
        if (c == '"') return Value{quoted()};
        if (c == '[') {
            ++i_;
            Array a;
            for (;;) {
                skip(true);
                if (peek() == ']') break;
                a.push_back(value());
                skip(true);
                if (peek() == ',') {
                    ++i_;
                    continue;
                }
                if (peek() != ']') fail("expected ',' or ']'");
            }
            ++i_;
            return Value{std::move(a)};
        }
        if (c == '{') {
            ++i_;
            Table t;
            for (;;) {
                skip(true);
                if (peek() == '}') break;
                const std::string k = key();
                skip(false);
                expect('=');
                skip(false);
                if (!t.emplace(k, value()).second) fail(fmt::format("duplicate key '{}'", k));
                skip(true);
                if (peek() == ',') {
                    ++i_;
                    continue;
                }
                if (peek() != '}') fail("expected ',' or '}'");
            }
            ++i_;
            return Value{std::move(t)};
        }
        const std::size_t start = i_;
        while (!done() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ',' && peek() != ']' &&
               peek() != '}' && peek() != '#')
            ++i_;
        const std::string_view tok = s_.substr(start, i_ - start);
        if (tok.empty()) fail("expected a value");
        if (tok == "true") return Value{true};
        if (tok == "false") return Value{false};
        if (tok == "inf" || tok == "+inf") return Value{HUGE_VAL};
        if (tok == "-inf") return Value{-HUGE_VAL};
        const char* b = tok.data();
        if (*b == '+') ++b;
        double x = 0.0;
        const auto [p, ec] = std::from_chars(b, tok.data() + tok.size(), x);
        if (ec != std::errc() || p != tok.data() + tok.size()) fail(fmt::format("invalid value '{}'", tok));
        return Value{x};
    }

    std::string_view s_;
    std::size_t i_ = 0;
    int line_ = 1;
};

std::vector<double> numbers(std::string_view key, const Value& v) {
    if (v.is_number()) return {std::get<double>(v.data)};
    std::vector<double> out;
    for (const auto& x : v.array(key)) out.push_back(x.number(key));
    return out;
}

int positive_int(std::string_view key, const Value& v) {
    const double x = v.number(key);
    if (!(x >= 1.0) || x != std::floor(x) || x > 1e7) throw ConfigError(fmt::format("'{}' must be a positive integer", key));
    return static_cast<int>(x);
}

double positive(std::string_view key, const Value& v) {
    const double x = v.number(key);
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(fmt::format("'{}' must be positive and finite", key));
    return x;
}

std::string number_text(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{}", x);
}

std::string list_text(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + number_text(v[i]);
    return s + "]";
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

double Value::number(std::string_view key) const {
    if (!is_number()) type_error(key, *this, "number");
    return std::get<double>(data);
}

const std::string& Value::string(std::string_view key) const {
    if (!is_string()) type_error(key, *this, "string");
    return std::get<std::string>(data);
}

bool Value::boolean(std::string_view key) const {
    if (!is_bool()) type_error(key, *this, "boolean");
    return std::get<bool>(data);
}

const Array& Value::array(std::string_view key) const {
    if (!is_array()) type_error(key, *this, "array");
    return std::get<Array>(data);
}

const Table& Value::table(std::string_view key) const {
    if (!is_table()) type_error(key, *this, "table");
    return std::get<Table>(data);
}

Table parse_document(std::string_view text) { return Parser(text).document(); }

Value parse_value(std::string_view text) { return Parser(text).single(); }

std::string to_string(Command c) {
    switch (c) {
        case Command::classify: return "classify";
        case Command::timemap: return "timemap";
        case Command::gcurve: return "gcurve";
        case Command::bifurcate: return "bifurcate";
        case Command::verify: return "verify";
        case Command::report: return "report";
    }
    return "?";
}

Command parse_command(std::string_view name) {
    for (auto c : {Command::classify, Command::timemap, Command::gcurve, Command::bifurcate, Command::verify,
                   Command::report})
        if (to_string(c) == name) return c;
    throw ConfigError(fmt::format("unknown command '{}'", name));
}

FamilyDescriptor descriptor_from_value(const Value& v) {
    const Table& t = v.table("family descriptor");
    FamilyDescriptor d;
    const auto kind = t.find("kind");
    if (kind == t.end()) throw ConfigError("family descriptor needs a 'kind'");
    d.kind = kind->second.string("kind");
    for (const auto& [k, x] : t) {
        if (k == "kind") continue;
        if (k == "terms") {
            for (const auto& term : x.array("terms")) d.terms.push_back(descriptor_from_value(term));
            continue;
        }
        d.params[k] = x.number(k);
    }
    return d;
}

PhiFamily make_phi(const FamilyDescriptor& d) {
    if (d.kind != "phi_k") throw ConfigError(fmt::format("unknown phi kind '{}' (supported: phi_k)", d.kind));
    for (const auto& [k, v] : d.params)
        if (k != "k") throw ConfigError(fmt::format("phi_k takes only 'k', got '{}'", k));
    return make_phi_k(d.param("k"));
}

ProblemInstance make_problem(const RunConfig& cfg) {
    if (!cfg.phi || !cfg.f) throw ConfigError("the problem needs both 'phi' and 'f'");
    return ProblemInstance(make_phi(*cfg.phi), make_f(*cfg.f));
}

RunConfig config_from_table(const Table& doc) {
    static const std::set<std::string> top = {"command", "phi", "f", "lambda", "L", "r", "tol", "force", "subset",
                                              "grid", "output"};
    RunConfig cfg;
    for (const auto& [k, v] : doc) {
        if (!top.count(k)) throw ConfigError(fmt::format("unknown key '{}'", k));
        if (k == "command") cfg.command = parse_command(v.string(k));
        else if (k == "phi") cfg.phi = descriptor_from_value(v);
        else if (k == "f") cfg.f = descriptor_from_value(v);
        else if (k == "lambda") cfg.lambdas = numbers(k, v);
        else if (k == "L") cfg.L_values = numbers(k, v);
        else if (k == "r") cfg.r_values = numbers(k, v);
        else if (k == "tol") cfg.tol = positive(k, v);
        else if (k == "force") cfg.force = v.boolean(k);
        else if (k == "subset") cfg.subset = v.string(k);
        else if (k == "grid") {
            for (const auto& [gk, gv] : v.table(k)) {
                const std::string name = "grid." + gk;
                if (gk == "r_points") cfg.r_points = positive_int(name, gv);
                else if (gk == "r_min") cfg.r_min = positive(name, gv);
                else if (gk == "r_max") cfg.r_max = positive(name, gv);
                else if (gk == "g_points") cfg.g_points = positive_int(name, gv);
                else if (gk == "per_decade") cfg.per_decade = positive_int(name, gv);
                else throw ConfigError(fmt::format("unknown key '{}'", name));
            }
        } else if (k == "output") {
            for (const auto& [ok, ov] : v.table(k)) {
                if (ok == "dir") {
                    cfg.output.dir = ov.string("output.dir");
                } else if (ok == "formats") {
                    cfg.output.csv = cfg.output.svg = cfg.output.structured = false;
                    for (const auto& f : ov.array("output.formats")) {
                        const std::string& name = f.string("output.formats");
                        if (name == "csv") cfg.output.csv = true;
                        else if (name == "svg") cfg.output.svg = true;
                        else if (name == "structured") cfg.output.structured = true;
                        else throw ConfigError(fmt::format("unknown output format '{}'", name));
                    }
                } else {
                    throw ConfigError(fmt::format("unknown key 'output.{}'", ok));
                }
            }
        }
    }
    for (double x : cfg.lambdas)
        if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("every lambda must be positive and finite");
    for (double x : cfg.L_values)
        if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("every L must be positive and finite");
    for (double x : cfg.r_values)
        if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("every r must be positive and finite");
    if (cfg.r_min >= 1.0 && cfg.r_min >= cfg.r_max) throw ConfigError("grid.r_min must be below grid.r_max");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read config '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return config_from_table(parse_document(ss.str()));
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", path, e.what()));
    }
}

std::string serialize(const FamilyDescriptor& d) {
    std::string s = "{ kind = " + quote(d.kind);
    for (const auto& [k, v] : d.params) s += fmt::format(", {} = {}", k, number_text(v));
    if (!d.terms.empty()) {
        s += ", terms = [";
        for (std::size_t i = 0; i < d.terms.size(); ++i) s += (i ? ", " : "") + serialize(d.terms[i]);
        s += "]";
    }
    return s + " }";
}

std::string serialize(const RunConfig& cfg) {
    std::string s;
    s += fmt::format("command = {}\n", quote(to_string(cfg.command)));
    if (cfg.phi) s += fmt::format("phi = {}\n", serialize(*cfg.phi));
    if (cfg.f) s += fmt::format("f = {}\n", serialize(*cfg.f));
    s += fmt::format("lambda = {}\n", list_text(cfg.lambdas));
    s += fmt::format("L = {}\n", list_text(cfg.L_values));
    s += fmt::format("r = {}\n", list_text(cfg.r_values));
    s += fmt::format("tol = {}\n", number_text(cfg.tol));
    s += fmt::format("force = {}\n", cfg.force ? "true" : "false");
    s += fmt::format("subset = {}\n", quote(cfg.subset));
    s += "\n[grid]\n";
    s += fmt::format("r_points = {}\n", cfg.r_points);
    s += fmt::format("r_min = {}\n", number_text(cfg.r_min));
    s += fmt::format("r_max = {}\n", number_text(cfg.r_max));
    s += fmt::format("g_points = {}\n", cfg.g_points);
    s += fmt::format("per_decade = {}\n", cfg.per_decade);
    s += "\n[output]\n";
    s += fmt::format("dir = {}\n", quote(cfg.output.dir));
    std::vector<std::string> formats;
    if (cfg.output.csv) formats.push_back("\"csv\"");
    if (cfg.output.svg) formats.push_back("\"svg\"");
    if (cfg.output.structured) formats.push_back("\"structured\"");
    s += fmt::format("formats = [{}]\n", fmt::join(formats, ", "));
    return s;
}

}  // namespace quasibif::cli
