#pragma once

// Unit, bar-lift and flatten for the idempotent measure monad, realised on
// finite lifted spaces (see lift in space.hpp).

#include <cstddef>
#include <cstdint>

#include "tropmeas/measure.hpp"

namespace tropmeas {

/// delta_{delta_x} on `lifted`, which must contain delta_x.
IdempotentMeasure unit_in(const SpacePtr& lifted, std::size_t x);

/// delta_{delta_x} on a fresh lifted space holding just delta_x.
IdempotentMeasure unit(const SpacePtr& space, std::size_t x);

/// delta_mu, the unit applied to a point-measure mu; on `lifted` if given,
/// otherwise on a fresh lifted space holding just mu.
IdempotentMeasure unit_of(const IdempotentMeasure& mu, const SpacePtr& lifted = nullptr);

/// phi_bar(nu) = nu(phi) for every point-measure nu of `lifted`.
FunctionOnSpace bar(const FunctionOnSpace& phi, const SpacePtr& lifted);

/// psi(M) = (+)_k (+)_s (m_k (.) lambda_ks) (.) delta_{x_ks}.
IdempotentMeasure flatten(const IdempotentMeasure& outer);

/// psi(M)(phi) computed as M(phi_bar); the independent route to flatten.
double flatten_definitional(const IdempotentMeasure& outer, const FunctionOnSpace& phi);

/// I(eta)(mu) = (+)_l lambda_l (.) delta_{delta_{x_l}}; on `lifted` if given
/// (it must contain every delta_{x_l}), otherwise on the space of those Diracs.
IdempotentMeasure map_unit(const IdempotentMeasure& mu, const SpacePtr& lifted = nullptr);

/// A random M with flatten(M) == mu exactly. The entries of mu are split into
/// `groups` nonempty blocks, each becoming an inner measure rescaled by its
/// block maximum; `extras` adds cross-memberships whose weight sits strictly
/// below what flatten already produces for that point.
IdempotentMeasure sample_psi_preimage(const IdempotentMeasure& mu, std::size_t groups,
                                      std::uint64_t seed, std::size_t extras);

}  // namespace tropmeas
