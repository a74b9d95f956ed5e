#pragma once

// Strict JSON input files: a tagged union of space constructions.

#include "swf/floer.hpp"
#include "swf/swfclass.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace swf::cli {

inline constexpr int kMaxNesting = 32;

struct SpaceSpec {
    enum class Kind { rep_sphere, unreduced_suspension, suspend, dualize, moy };

    Kind kind = Kind::rep_sphere;
    RepDesc rep;                          // rep_sphere, suspend, dualize
    KappaData kappa;                      // unreduced_suspension
    MoyData moy;                          // moy
    std::shared_ptr<const SpaceSpec> of;  // suspend, dualize
    std::optional<FloerContext> floer;    // root only
};

std::string to_string(SpaceSpec::Kind k);

struct ParsedSpace {
    SpaceSpec spec;
    nlohmann::json canonical; // sorted keys; dump() is whitespace-free
};

/// Throws Error(input) with a "$.path: ..." message on any schema violation.
ParsedSpace parse_space(std::string_view bytes);

struct Evaluated {
    SwfClass cls;
    FloerContext ctx;
    std::optional<MoyResult> moy;
    std::optional<int> lambda_reference;
};

/// Builds the class. The Floer normalization follows the construction:
/// (dim V, 0) for a representation sphere, (0, 0) for an unreduced
/// suspension, the assembly's own for moy data, D + dim V under suspension
/// and (dim V - D, -n) under V-duality, unless the root overrides it.
Evaluated evaluate(const SpaceSpec& spec);

} // namespace swf::cli
