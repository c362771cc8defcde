#include "rainbowpack/instance.hpp"

#include "rainbowpack/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace rainbowpack {

using nlohmann::json;

namespace {

RationalVec parse_vector(const json& arr, int dimension, const char* what) {
    if (!arr.is_array())
        throw ParseError(std::string(what) + " must be an array of rational strings");
    if (static_cast<int>(arr.size()) != dimension)
        throw ParseError(std::string(what) + " has " + std::to_string(arr.size()) +
                         " coordinates, expected " + std::to_string(dimension));
    RationalVec out;
    out.reserve(arr.size());
    for (const auto& item : arr) {
        Rational r;
        if (item.is_string()) {
            r = Rational::parse(item.get<std::string>());
        } else if (item.is_number_integer()) {
            r = Rational(item.get<long long>());
        } else {
            throw ParseError(std::string(what) + " entries must be rational strings or integers");
        }
        if (r.is_negative())
            throw ParseError(std::string(what) + " has a negative coordinate");
        out.push_back(r);
    }
    return out;
}

} // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance must be a JSON object");

    Instance inst;
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        throw ParseError("missing integer field 'dimension'");
    inst.dimension = doc["dimension"].get<int>();
    if (inst.dimension < 1) throw ParseError("dimension must be positive");

    if (!doc.contains("capacity"))
        throw ParseError("missing field 'capacity'");
    inst.capacity = parse_vector(doc["capacity"], inst.dimension, "capacity");

    if (!doc.contains("vectors") || !doc["vectors"].is_array())
        throw ParseError("missing array field 'vectors'");
    for (const auto& v : doc["vectors"])
        inst.vectors.push_back(parse_vector(v, inst.dimension, "vector"));

    if (doc.contains("profits")) {
        if (!doc["profits"].is_array())
            throw ParseError("'profits' must be an array of integers");
        std::vector<long long> p;
        for (const auto& item : doc["profits"]) {
            if (!item.is_number_integer())
                throw ParseError("profits must be integers");
            long long value = item.get<long long>();
            if (value < 0) throw ParseError("profits must be non-negative");
            p.push_back(value);
        }
        if (static_cast<int>(p.size()) != inst.n())
            throw ParseError("profit list length differs from vector count");
        inst.profits = std::move(p);
    }

    if (doc.contains("containers")) {
        if (!doc["containers"].is_number_integer())
            throw ParseError("'containers' must be an integer");
        long long c = doc["containers"].get<long long>();
        if (c < 0) throw ParseError("'containers' must be non-negative");
        inst.containers = c;
    }

    if (inst.profits && !inst.containers)
        throw ParseError("profits given without a container count");

    return inst;
}

std::string serialize_instance(const Instance& inst) {
    json doc;
    doc["dimension"] = inst.dimension;
    json cap = json::array();
    for (const auto& r : inst.capacity) cap.push_back(r.str());
    doc["capacity"] = cap;
    json vecs = json::array();
    for (const auto& v : inst.vectors) {
        json row = json::array();
        for (const auto& r : v) row.push_back(r.str());
        vecs.push_back(row);
    }
    doc["vectors"] = vecs;
    if (inst.profits) doc["profits"] = *inst.profits;
    if (inst.containers) doc["containers"] = *inst.containers;
    return doc.dump();
}

std::string serialize_assignment(const Assignment& asg) {
    json doc;
    doc["objective"] = asg.objective;
    json placement = json::array();
    for (const auto& p : asg.placement) {
        if (p)
            placement.push_back(*p);
        else
            placement.push_back(nullptr);
    }
    doc["placement"] = placement;
    return doc.dump();
}

ValidationReport validate(const Instance& inst, const Assignment& asg, Mode mode) {
    ValidationReport report;
    auto flag = [&](int container, int dim, Rational amount, std::string what) {
        report.valid = false;
        report.violations.push_back({container, dim, std::move(amount), std::move(what)});
    };

    if (static_cast<int>(asg.placement.size()) != inst.n()) {
        flag(-1, -1, Rational(0), "placement length differs from object count");
        return report;
    }

    std::map<int, RationalVec> loads;
    std::map<int, long long> profit_per_container;
    for (int i = 0; i < inst.n(); ++i) {
        const auto& p = asg.placement[i];
        if (!p) {
            if (mode != Mode::knapsack)
                flag(-1, -1, Rational(0),
                     "object " + std::to_string(i) + " unplaced outside knapsack mode");
            continue;
        }
        if (*p < 1) {
            flag(*p, -1, Rational(0), "container index below 1");
            continue;
        }
        if (mode == Mode::knapsack && inst.containers && *p > *inst.containers) {
            flag(*p, -1, Rational(0), "container index exceeds container count");
            continue;
        }
        auto [it, fresh] = loads.try_emplace(*p, RationalVec(inst.dimension, Rational(0)));
        it->second = vec_add(it->second, inst.vectors[i]);
        if (inst.profits) profit_per_container[*p] += (*inst.profits)[i];
    }

    if (mode == Mode::pack || mode == Mode::knapsack) {
        for (const auto& [container, load] : loads) {
            for (int dim = 0; dim < inst.dimension; ++dim) {
                if (load[dim] > inst.capacity[dim])
                    flag(container, dim, load[dim] - inst.capacity[dim], "capacity exceeded");
            }
        }
    }

    long long actual = 0;
    switch (mode) {
    case Mode::pack:
        actual = static_cast<long long>(loads.size());
        break;
    case Mode::cover:
        for (const auto& [container, load] : loads)
            if (vec_ge(load, inst.capacity)) ++actual;
        break;
    case Mode::knapsack:
        for (const auto& [container, profit] : profit_per_container) actual += profit;
        break;
    }
    if (actual != asg.objective)
        flag(-1, -1, Rational(asg.objective - actual), "objective mismatch");

    return report;
}

bool instances_equal(const Instance& a, const Instance& b) {
    if (a.dimension != b.dimension) return false;
    if (a.capacity != b.capacity) return false;
    if (a.vectors != b.vectors) return false;
    if (a.profits != b.profits) return false;
    if (a.containers != b.containers) return false;
    return true;
}

} // namespace rainbowpack
