#ifndef VCSP_IO_HPP
#define VCSP_IO_HPP

#include "vcsp/backdoor.hpp"

#include <map>
#include <optional>
#include <string>

namespace vcsp {

// On-disk form: a JSON document with fields domain_size, num_variables,
// constraints (scope list + table of cost strings in the fixed mixed-radix
// row order), plus optional finite-explicit languages and string metadata.
// Costs are serialized as "p", "p/q" in lowest terms, or "inf".
struct InstanceDocument {
    Instance instance;
    std::vector<Language> languages;
    std::map<std::string, std::string> metadata;

    InstanceDocument() : instance(0, 1) {}
    explicit InstanceDocument(Instance inst) : instance(std::move(inst)) {}
};

// Positioned errors (ParseError) name the offending constraint or field.
InstanceDocument parse_instance(const std::string& text);

// Canonical form: fixed field order, two-space indent, reduced costs.
// emit_instance(parse_instance(x)) == emit_instance(parse_instance(emit_instance(parse_instance(x)))).
std::string emit_instance(const InstanceDocument& document);

// Machine-readable run summary with stable field names.
struct RunReport {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string status; // "ok" or "no"
    std::optional<std::vector<int>> backdoor;
    std::optional<std::string> cost;
    std::optional<std::vector<int>> assignment;
    SearchStats stats;
    double wall_time_ms = 0.0;
};

std::string emit_report(const RunReport& report);

} // namespace vcsp

#endif
