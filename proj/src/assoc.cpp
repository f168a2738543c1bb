#include "azitrack/assoc.hpp"

#include <algorithm>

namespace azitrack {

std::vector<double> detection_probabilities(const std::vector<double>& masks,
                                            AssociationMode mode, double floor) {
    if (floor <= 0.0 || floor >= 0.5) {
        throw ValidationError("detection_probabilities: floor must be in (0, 0.5)");
    }
    std::vector<double> p(masks.size());
    if (mode == AssociationMode::Spatial) {
        std::fill(p.begin(), p.end(), 0.5);
        return p;
    }
    for (std::size_t q = 0; q < masks.size(); ++q) {
        p[q] = std::clamp(masks[q], floor, 1.0 - floor);
    }
    return p;
}

AssociationResult association_probabilities(const std::vector<double>& likelihoods,
                                            const std::vector<double>& detect,
                                            AssociationMode mode) {
    const std::size_t q_count = likelihoods.size();
    if (q_count == 0) throw ValidationError("association_probabilities: no speakers");
    if (detect.size() != q_count) {
        throw ValidationError("association_probabilities: size mismatch");
    }

    // Normalizing the likelihoods by their maximum makes beta exactly
    // invariant to a common likelihood scale and makes Joint mode collapse
    // bit-exactly onto Spectral mode when all likelihoods are equal.
    double lmax = 0.0;
    for (double l : likelihoods) {
        if (l < 0.0) throw ValidationError("association_probabilities: negative likelihood");
        lmax = std::max(lmax, l);
    }

    AssociationResult out;
    out.beta.resize(q_count);
    if (mode != AssociationMode::Spectral && lmax == 0.0) {
        std::fill(out.beta.begin(), out.beta.end(), 1.0 / double(q_count));
        out.underflow = true;
        return out;
    }

    double sum = 0.0;
    for (std::size_t q = 0; q < q_count; ++q) {
        double u = (mode == AssociationMode::Spectral) ? 1.0 : likelihoods[q] / lmax;
        u *= detect[q];
        for (std::size_t r = 0; r < q_count; ++r) {
            if (r != q) u *= 1.0 - detect[r];
        }
        out.beta[q] = u;
        sum += u;
    }

    if (sum <= 0.0) {
        std::fill(out.beta.begin(), out.beta.end(), 1.0 / double(q_count));
        out.underflow = true;
        return out;
    }
    for (double& b : out.beta) b /= sum;
    return out;
}

} // namespace azitrack
