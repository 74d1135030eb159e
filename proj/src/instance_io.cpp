#include "scoreid/instance_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "scoreid/errors.hpp"
#include "scoreid/scoring.hpp"

namespace scoreid {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ValidationError(ValidationKind::kShape, std::string("missing field '") + key + "'");
    return *it;
}

std::vector<double> as_vector(const json& node, const char* what) {
    if (!node.is_array()) throw ValidationError(ValidationKind::kShape, std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(node.size());
    for (const json& x : node) {
        if (!x.is_number()) throw ValidationError(ValidationKind::kShape, std::string(what) + " must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

double achieved_margin(const Instance& inst) {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < inst.num_arms(); ++k) {
        const double own = agent_profit(inst, k, inst.oracle_rules[k]);
        for (std::size_t other = 0; other < inst.num_arms(); ++other) {
            if (other != k) margin = std::min(margin, own - agent_profit(inst, other, inst.oracle_rules[k]));
        }
    }
    return margin;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(ValidationKind::kShape, std::string("malformed JSON: ") + e.what());
    }

    UtilityModel utility;
    utility.n_states = require(doc, "n_states").get<std::size_t>();
    utility.n_decisions = require(doc, "n_decisions").get<std::size_t>();
    utility.u = as_vector(require(doc, "u"), "u");
    utility.bound = require(doc, "B_u").get<double>();
    if (utility.u.size() != utility.n_states * utility.n_decisions) {
        throw ValidationError(ValidationKind::kShape, "u must have n_states * n_decisions entries");
    }

    std::vector<Belief> beliefs;
    for (const json& b : require(doc, "support")) {
        Belief belief{as_vector(b, "support belief")};
        if (belief.num_states() != utility.n_states) {
            throw ValidationError(ValidationKind::kShape, "support belief has wrong length");
        }
        normalize_probabilities(belief.probs, "support belief");
        beliefs.push_back(std::move(belief));
    }

    Instance inst;
    inst.utility = utility;
    inst.support = make_support(std::move(beliefs), inst.utility);
    inst.score_bound = require(doc, "B_S").get<double>();
    for (const json& a : require(doc, "arms")) {
        Arm arm;
        arm.q = as_vector(require(a, "q"), "arm q");
        arm.cost = require(a, "cost").get<double>();
        if (arm.q.size() != inst.support_size()) throw ValidationError(ValidationKind::kShape, "arm q has wrong length");
        normalize_probabilities(arm.q, "arm q");
        inst.arms.push_back(std::move(arm));
    }
    validate_domain(inst);

    auto rules = doc.find("oracle_rules");
    if (rules == doc.end() || rules->is_null()) {
        attach_oracles(inst, build_oracle_rules(inst));
    } else {
        for (const json& r : *rules) {
            ScoringRule rule;
            rule.values = as_vector(require(r, "values"), "oracle values");
            for (const json& g : require(r, "subgradients")) rule.subgradients.push_back(as_vector(g, "subgradient"));
            inst.oracle_rules.push_back(std::move(rule));
        }
        if (inst.oracle_rules.size() != inst.num_arms()) {
            throw ValidationError(ValidationKind::kShape, "need one oracle rule per arm");
        }
        for (const ScoringRule& rule : inst.oracle_rules) {
            if (rule.support_size() != inst.support_size() || rule.num_states() != inst.num_states()) {
                throw ValidationError(ValidationKind::kShape, "oracle rule shape mismatch");
            }
        }
        auto margin = doc.find("oracle_margin");
        inst.oracle_margin = margin != doc.end() ? margin->get<double>() : achieved_margin(inst) * (1.0 - 1e-6);
    }
    validate_instance(inst);
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

std::string instance_to_json(const Instance& inst) {
    json doc;
    doc["n_states"] = inst.utility.n_states;
    doc["n_decisions"] = inst.utility.n_decisions;
    doc["u"] = inst.utility.u;
    doc["B_u"] = inst.utility.bound;
    doc["B_S"] = inst.score_bound;
    doc["support"] = json::array();
    for (const Belief& b : inst.support.beliefs) doc["support"].push_back(b.probs);
    doc["arms"] = json::array();
    for (const Arm& a : inst.arms) doc["arms"].push_back({{"q", a.q}, {"cost", a.cost}});
    doc["oracle_rules"] = json::array();
    for (const ScoringRule& r : inst.oracle_rules) {
        doc["oracle_rules"].push_back({{"values", r.values}, {"subgradients", r.subgradients}});
    }
    doc["oracle_margin"] = inst.oracle_margin;
    return doc.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << instance_to_json(inst);
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace scoreid
