#pragma once

// Dense state-vector oracle for measurement tests: projects a register onto a
// Z outcome the long way (select amplitudes, renormalize, drop the qubit).
// The library's graph-rule measurement is checked against this, never against
// itself.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "collgrid/stabilizer.hpp"

namespace testsup {

struct DenseMeasurement {
    double probability = 0.0;
    collgrid::QuantumRegister state;  // renormalized post-measurement state, qubit removed
};

// Measure 1-based qubit q of reg in the Z basis, post-selecting `outcome`.
inline DenseMeasurement dense_measure_z(const collgrid::QuantumRegister& reg, int q, int outcome) {
    if (q < 1 || q > reg.n) throw std::invalid_argument("dense_measure_z: qubit outside register");
    if (reg.n < 2) throw std::invalid_argument("dense_measure_z: nothing would remain");

    DenseMeasurement out;
    out.state.n = reg.n - 1;
    out.state.amp.assign(reg.dim() / 2, {});

    const std::size_t low_bits = std::size_t(reg.n - q);       // bits below the measured one
    const std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
    for (std::size_t idx = 0; idx < reg.dim(); ++idx) {
        if (reg.bit(idx, q) != (outcome != 0)) continue;
        std::size_t reduced = ((idx >> (low_bits + 1)) << low_bits) | (idx & low_mask);
        out.state.amp[reduced] = reg.amp[idx];
        out.probability += std::norm(reg.amp[idx]);
    }
    if (out.probability > 0) {
        const double scale = 1.0 / std::sqrt(out.probability);
        for (auto& a : out.state.amp) a *= scale;
    }
    return out;
}

// Pauli-Z on 1-based qubit q: negate amplitudes where the bit is set.
inline void dense_apply_z(collgrid::QuantumRegister& reg, int q) {
    for (std::size_t idx = 0; idx < reg.dim(); ++idx)
        if (reg.bit(idx, q)) reg.amp[idx] = -reg.amp[idx];
}

}  // namespace testsup
