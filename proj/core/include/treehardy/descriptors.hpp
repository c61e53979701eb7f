#pragma once

/**
 * Text descriptors for trees, weights, and radial functions.
 *
 * These are the string forms used on the command line and in CSV headers.
 * Each parse accepts exactly the canonical grammar produced by the matching
 * describe() method, so describe/parse round-trip:
 *
 *   trees      homogeneous:q=2
 *              custom:prefix=2,3,4;extend=repeat
 *              custom:prefix=2,3,4;extend=affine:1,3
 *
 *   weights    wopt:q=2
 *              wbg:q=2,beta=0.5,gamma=0.8
 *              whg:q=2,gamma=0.75
 *              wradial:spec=(custom:prefix=2,4;extend=repeat),beta=0.5,gamma=1,psi1=1
 *              rq:q=2      rbg:q=2,beta=0.25,gamma=0.8      rbar:q=2
 *
 *   functions  green-sqrt:q=2
 *              u:q=2,beta=0.5[,gamma=0.8]
 *              u3:q=2,alpha=-0.5,beta=1[,gamma=0.8]
 *              pair-u:q=2[,gamma=..]   pair-v:q=2[,gamma=..]   ground-z:q=2[,gamma=..]
 *              quotient-u0
 *              radial-u:spec=(...),beta=0.5[,gamma=..][,psi1=1]
 *              const:c=1
 *
 * For the wradial / radial-u families the spec=(...) parameter may be left
 * out when a context tree is supplied; the context tree is then used.
 * Malformed text raises ParseError.
 */

#include <optional>
#include <string>

#include "treehardy/radial_functions.hpp"
#include "treehardy/tree.hpp"
#include "treehardy/weights.hpp"

namespace treehardy {

RadialTreeSpec parse_tree_spec(const std::string& text);

WeightSpec parse_weight_spec(
    const std::string& text,
    const std::optional<RadialTreeSpec>& context_tree = std::nullopt);

RadialFunction parse_radial_function(
    const std::string& text,
    const std::optional<RadialTreeSpec>& context_tree = std::nullopt);

}  // namespace treehardy
