#ifndef RAINBOWPACK_INSTANCE_HPP
#define RAINBOWPACK_INSTANCE_HPP

#include "rainbowpack/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rainbowpack {

enum class Mode { pack, cover, knapsack };

// Immutable problem instance. In 1-D mode the vector list is a sequence:
// duplicates are meaningful and order is preserved.
struct Instance {
    int dimension = 1;
    RationalVec capacity;                          // T, one entry per dimension
    std::vector<RationalVec> vectors;              // n entries, each of size d
    std::optional<std::vector<long long>> profits; // knapsack only
    std::optional<long long> containers;           // knapsack only

    int n() const { return static_cast<int>(vectors.size()); }
};

// placement[i] is the 1-based container of object i, or nullopt for
// "unpacked" (legal only in knapsack mode).
struct Assignment {
    std::vector<std::optional<int>> placement;
    long long objective = 0;
};

struct ValidationReport {
    struct Violation {
        int container;  // -1 for structural problems or objective mismatch
        int dimension;  // -1 when not dimension-specific
        Rational amount;
        std::string what;
    };
    bool valid = true;
    std::vector<Violation> violations;
};

// Parses the documented UTF-8 JSON instance format. Rationals are read
// exactly; decimal literals become exact fractions. Throws ParseError.
Instance parse_instance(const std::string& text);

// Canonical JSON serialization; parse(serialize(parse(x))) == parse(x).
std::string serialize_instance(const Instance& inst);

std::string serialize_assignment(const Assignment& asg);

// Exact re-check of an assignment against the instance under the given
// mode. Invalid assignments yield valid=false, never an exception.
ValidationReport validate(const Instance& inst, const Assignment& asg, Mode mode);

bool instances_equal(const Instance& a, const Instance& b);

} // namespace rainbowpack

#endif
