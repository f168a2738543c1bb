#ifndef AZITRACK_ASSOC_HPP
#define AZITRACK_ASSOC_HPP

#include <vector>

#include "azitrack/common.hpp"

namespace azitrack {

enum class AssociationMode { Spatial, Spectral, Joint };

// Per-speaker detection probabilities from TF-mask values.
// Spatial mode ignores the masks and returns 0.5 everywhere; the other
// modes clamp each mask into [floor, 1-floor] so no speaker is ever
// annihilated by a saturated mask.
std::vector<double> detection_probabilities(const std::vector<double>& masks,
                                            AssociationMode mode, double floor);

struct AssociationResult {
    std::vector<double> beta;
    bool underflow = false; // all unnormalized terms vanished; beta is uniform
};

// Clutter-free association probabilities:
//   u_q = L_q * P_q * prod_{q' != q} (1 - P_{q'}),  beta = u / sum(u)
// Spectral mode replaces every likelihood L_q by 1.
AssociationResult association_probabilities(const std::vector<double>& likelihoods,
                                            const std::vector<double>& detect,
                                            AssociationMode mode);

} // namespace azitrack

#endif
