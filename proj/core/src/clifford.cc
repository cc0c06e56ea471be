// Copyright 2026 The pauli-mrf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pauli_mrf/clifford.h"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pauli_mrf {

Matrix2 matmul(const Matrix2 &a, const Matrix2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Matrix2 adjoint(const Matrix2 &a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

Matrix2 pauli_matrix(uint8_t code) {
    const Amplitude i(0, 1);
    switch (code) {
        case 0:
            return {1, 0, 0, 1};
        case 1:
            return {0, 1, 1, 0};
        case 2:
            return {1, 0, 0, -1};
        case 3:
            return {0, -i, i, 0};
    }
    throw std::invalid_argument("Pauli code must be in 0..3.");
}

namespace {

// Code of the Pauli proportional to m, or -1.
int proportional_pauli(const Matrix2 &m) {
    for (uint8_t code = 1; code < 4; code++) {
        Matrix2 p = pauli_matrix(code);
        // m = c p with |c| = 1  <=>  |tr(p m)| = 2.
        Amplitude tr = p[0] * m[0] + p[1] * m[2] + p[2] * m[1] + p[3] * m[3];
        if (std::abs(std::abs(tr) - 2.0) < 1e-9) {
            return code;
        }
    }
    return -1;
}

int conjugated(const Matrix2 &u, uint8_t code) {
    return proportional_pauli(matmul(matmul(u, pauli_matrix(code)), adjoint(u)));
}

std::array<SingleQubitClifford, kNumCliffords> build_group() {
    const double r = 1 / std::sqrt(2.0);
    const Matrix2 h{r, r, r, -r};
    const Matrix2 s{1, 0, 0, Amplitude(0, 1)};
    const Matrix2 identity{1, 0, 0, 1};

    std::vector<Matrix2> found{identity};
    // Signs matter for deduplication: S and S^dagger act differently on X.
    auto same_action = [](const Matrix2 &u, const Matrix2 &v) {
        for (uint8_t code : {uint8_t{1}, uint8_t{2}}) {
            Matrix2 a = matmul(matmul(u, pauli_matrix(code)), adjoint(u));
            Matrix2 b = matmul(matmul(v, pauli_matrix(code)), adjoint(v));
            for (int k = 0; k < 4; k++) {
                if (std::abs(a[k] - b[k]) > 1e-9) {
                    return false;
                }
            }
        }
        return true;
    };
    size_t head = 0;
    while (head < found.size()) {
        Matrix2 current = found[head++];
        for (const Matrix2 &g : {s, h}) {
            Matrix2 next = matmul(g, current);
            bool known = false;
            for (const auto &f : found) {
                if (same_action(f, next)) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                found.push_back(next);
            }
        }
    }
    if (found.size() != kNumCliffords) {
        throw std::logic_error("Single-qubit Clifford enumeration did not produce 24 elements.");
    }

    std::array<SingleQubitClifford, kNumCliffords> group;
    for (size_t c = 0; c < kNumCliffords; c++) {
        const Matrix2 &u = found[c];
        SingleQubitClifford &out = group[c];
        out.unitary = u;
        out.x_image = static_cast<uint8_t>(conjugated(u, 1));
        out.z_image = static_cast<uint8_t>(conjugated(u, 2));
        Matrix2 u_dag = adjoint(u);
        for (uint8_t code = 1; code < 4; code++) {
            if (conjugated(u_dag, code) == 2) {
                out.diagonalized = code;
            }
        }
        for (uint8_t e = 0; e < 4; e++) {
            // Final state U^dagger E U |0>.
            Matrix2 m = matmul(matmul(u_dag, pauli_matrix(e)), u);
            double p1 = std::norm(m[2]);
            double p0 = std::norm(m[0]);
            double total = p0 + p1;
            p1 /= total;
            // Clifford conjugates of Paulis give exact 0/1 outcomes; snap rounding noise.
            if (p1 < 1e-12) {
                p1 = 0;
            } else if (p1 > 1 - 1e-12) {
                p1 = 1;
            }
            out.prob_one[e] = p1;
        }
    }
    return group;
}

}  // namespace

const std::array<SingleQubitClifford, kNumCliffords> &clifford_group() {
    static const std::array<SingleQubitClifford, kNumCliffords> group = build_group();
    return group;
}

}  // namespace pauli_mrf
