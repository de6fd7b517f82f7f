#include "vcsp/io.hpp"

#include <json.hpp>

namespace vcsp {

namespace {

using Json = nlohmann::ordered_json;

std::vector<Cost> parse_table(const Json& node, const std::string& where, std::size_t expected) {
    if (!node.is_array())
        throw ParseError(where + ": table must be an array");
    if (node.size() != expected)
        throw ParseError(where + ": table length " + std::to_string(node.size()) +
                         ", expected d^m = " + std::to_string(expected));
    std::vector<Cost> table;
    table.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        if (!node[i].is_string())
            throw ParseError(where + ".table[" + std::to_string(i) + "]: costs are strings");
        try {
            table.push_back(Cost::parse(node[i].get<std::string>()));
        } catch (const Error& e) {
            throw ParseError(where + ".table[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return table;
}

int require_int(const Json& doc, const std::string& field, int min_value) {
    if (!doc.contains(field))
        throw ParseError("missing field '" + field + "'");
    if (!doc[field].is_number_integer())
        throw ParseError("field '" + field + "' must be an integer");
    int value = doc[field].get<int>();
    if (value < min_value)
        throw ParseError("field '" + field + "' must be >= " + std::to_string(min_value));
    return value;
}

Json table_json(const CostFunction& f) {
    Json table = Json::array();
    for (const Cost& c : f.table()) table.push_back(c.str());
    return table;
}

} // namespace

InstanceDocument parse_instance(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("document must be a JSON object");

    int d = require_int(doc, "domain_size", 1);
    int n = require_int(doc, "num_variables", 0);

    std::vector<ValuedConstraint> constraints;
    if (doc.contains("constraints")) {
        if (!doc["constraints"].is_array())
            throw ParseError("field 'constraints' must be an array");
        for (std::size_t i = 0; i < doc["constraints"].size(); ++i) {
            std::string where = "constraints[" + std::to_string(i) + "]";
            const Json& node = doc["constraints"][i];
            if (!node.is_object() || !node.contains("scope") || !node.contains("table"))
                throw ParseError(where + ": needs 'scope' and 'table'");
            std::vector<int> scope;
            for (const Json& v : node["scope"]) {
                if (!v.is_number_integer())
                    throw ParseError(where + ".scope: variable indices must be integers");
                int var = v.get<int>();
                if (var < 0 || var >= n)
                    throw ParseError(where + ".scope: variable " + std::to_string(var) +
                                     " out of range [0," + std::to_string(n) + ")");
                scope.push_back(var);
            }
            std::vector<Cost> table =
                parse_table(node["table"], where, table_size(d, static_cast<int>(scope.size())));
            constraints.emplace_back(std::move(scope),
                                     CostFunction(static_cast<int>(node["scope"].size()), d,
                                                  std::move(table)));
        }
    }

    InstanceDocument result{Instance(n, d, std::move(constraints))};

    if (doc.contains("languages")) {
        if (!doc["languages"].is_array())
            throw ParseError("field 'languages' must be an array");
        for (std::size_t i = 0; i < doc["languages"].size(); ++i) {
            std::string where = "languages[" + std::to_string(i) + "]";
            const Json& node = doc["languages"][i];
            if (!node.is_object() || !node.contains("name") || !node.contains("arity_bound"))
                throw ParseError(where + ": needs 'name' and 'arity_bound'");
            std::string name = node["name"].get<std::string>();
            int arity_bound = node["arity_bound"].get<int>();
            std::vector<CostFunction> functions;
            if (node.contains("functions")) {
                for (std::size_t j = 0; j < node["functions"].size(); ++j) {
                    const Json& fn = node["functions"][j];
                    std::string fwhere = where + ".functions[" + std::to_string(j) + "]";
                    if (!fn.is_object() || !fn.contains("arity") || !fn.contains("table"))
                        throw ParseError(fwhere + ": needs 'arity' and 'table'");
                    int arity = fn["arity"].get<int>();
                    if (arity < 0)
                        throw ParseError(fwhere + ": negative arity");
                    functions.emplace_back(arity, d,
                                           parse_table(fn["table"], fwhere, table_size(d, arity)));
                }
            }
            bool conservative = node.value("conservative", false);
            bool closed = node.value("closed_under_partial_assignments", false);
            result.languages.push_back(Language::finite_explicit(
                std::move(name), d, arity_bound, std::move(functions), conservative, closed));
        }
    }

    if (doc.contains("metadata")) {
        if (!doc["metadata"].is_object())
            throw ParseError("field 'metadata' must be an object of strings");
        for (const auto& [key, value] : doc["metadata"].items()) {
            if (!value.is_string())
                throw ParseError("metadata." + key + ": values must be strings");
            result.metadata.emplace(key, value.get<std::string>());
        }
    }
    return result;
}

std::string emit_instance(const InstanceDocument& document) {
    Json doc;
    doc["domain_size"] = document.instance.domain_size();
    doc["num_variables"] = document.instance.num_variables();
    doc["constraints"] = Json::array();
    for (const ValuedConstraint& c : document.instance.constraints()) {
        Json node;
        node["scope"] = c.scope;
        node["table"] = table_json(c.function);
        doc["constraints"].push_back(std::move(node));
    }
    if (!document.languages.empty()) {
        doc["languages"] = Json::array();
        for (const Language& g : document.languages) {
            if (g.kind() != LanguageKind::FiniteExplicit)
                throw Error("emit_instance: only finite_explicit languages are serializable");
            Json node;
            node["name"] = g.name();
            node["arity_bound"] = g.arity_bound();
            node["conservative"] = g.declared_conservative();
            node["closed_under_partial_assignments"] =
                g.declared_closed_under_partial_assignments();
            node["functions"] = Json::array();
            for (const CostFunction& f : g.functions()) {
                Json fn;
                fn["arity"] = f.arity();
                fn["table"] = table_json(f);
                node["functions"].push_back(std::move(fn));
            }
            doc["languages"].push_back(std::move(node));
        }
    }
    if (!document.metadata.empty()) {
        Json meta = Json::object();
        for (const auto& [key, value] : document.metadata) meta[key] = value;
        doc["metadata"] = std::move(meta);
    }
    return doc.dump(2) + "\n";
}

std::string emit_report(const RunReport& report) {
    Json doc;
    doc["command"] = report.command;
    Json params = Json::object();
    for (const auto& [key, value] : report.parameters) params[key] = value;
    doc["parameters"] = std::move(params);
    Json result;
    result["status"] = report.status;
    if (report.backdoor) result["backdoor"] = *report.backdoor;
    if (report.cost) result["cost"] = *report.cost;
    if (report.assignment) result["assignment"] = *report.assignment;
    doc["result"] = std::move(result);
    doc["stats"] = {{"nodes_visited", report.stats.nodes_visited},
                    {"assignments_checked", report.stats.assignments_checked}};
    doc["wall_time_ms"] = report.wall_time_ms;
    return doc.dump(2) + "\n";
}

} // namespace vcsp
