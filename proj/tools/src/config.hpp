#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <quasibif/catalog.hpp>
#include <quasibif/nonlinearity.hpp>
#include <quasibif/phi.hpp>

namespace quasibif::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Value of the key = value config language: numbers, strings, booleans,
// [arrays] and { inline = tables }.
struct Value;
using Table = std::map<std::string, Value>;
using Array = std::vector<Value>;

struct Value {
    std::variant<double, std::string, bool, Array, Table> data;

    bool is_number() const { return std::holds_alternative<double>(data); }
    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_bool() const { return std::holds_alternative<bool>(data); }
    bool is_array() const { return std::holds_alternative<Array>(data); }
    bool is_table() const { return std::holds_alternative<Table>(data); }

    double number(std::string_view key) const;
    const std::string& string(std::string_view key) const;
    bool boolean(std::string_view key) const;
    const Array& array(std::string_view key) const;
    const Table& table(std::string_view key) const;
};

// Parses a document; [section] headers open nested tables.
Table parse_document(std::string_view text);

// Parses a single value such as { kind = "phi_k", k = 3 }.
Value parse_value(std::string_view text);

enum class Command { classify, timemap, gcurve, bifurcate, verify, report };
std::string to_string(Command c);
Command parse_command(std::string_view name);

struct OutputSpec {
    std::string dir = "quasibif-out";
    bool csv = true;
    bool svg = true;
    bool structured = true;
};

struct RunConfig {
    Command command = Command::classify;
    std::optional<FamilyDescriptor> phi;
    std::optional<FamilyDescriptor> f;
    std::vector<double> lambdas;
    std::vector<double> L_values;
    std::vector<double> r_values;
    double tol = 1e-9;
    int r_points = 200;       // time-map samples per lambda
    double r_min = 1e-3;      // smallest r, relative to r* (or absolute when r* = +inf)
    double r_max = 10.0;      // right end used when r* = +inf
    int g_points = 400;       // g-tilde samples
    int per_decade = 256;     // lambda grid density for diagrams
    std::string subset = "all";
    bool force = false;
    OutputSpec output;
};

RunConfig config_from_table(const Table& doc);
RunConfig load_config(const std::string& path);

FamilyDescriptor descriptor_from_value(const Value& v);
PhiFamily make_phi(const FamilyDescriptor& d);
ProblemInstance make_problem(const RunConfig& cfg);

// The config re-expressed in the config language, with every default spelled out.
std::string serialize(const RunConfig& cfg);
std::string serialize(const FamilyDescriptor& d);

}  // namespace quasibif::cli
