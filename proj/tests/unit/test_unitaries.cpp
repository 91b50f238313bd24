// Copyright 2026 The rmlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include "rmlab/errors.hpp"
#include "rmlab/unitaries.hpp"

using namespace rmlab;
using doctest::Approx;

namespace {

double unitarity_error(const CMatrix &u) {
    return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

bool equal_up_to_phase(const CMatrix &a, const CMatrix &b) {
    const double d = static_cast<double>(a.rows());
    return std::abs(std::abs((a.adjoint() * b).trace()) - d) < 1e-9;
}

CMatrix random_operator(int d, Rng &rng) {
    CMatrix o(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            o(r, c) = cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
        }
    }
    return o;
}

} // namespace

TEST_SUITE("random-unitaries") {

TEST_CASE("Haar samples are unitary and reproducible") {
    Rng rng(1);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        worst = std::max(worst, unitarity_error(sample_haar(3, rng).dense()));
    }
    CHECK(worst < 1e-10);
    CHECK((sample_haar(2, 99).dense() - sample_haar(2, 99).dense()).norm() == 0.0);
    CHECK((sample_haar(2, 99).dense() - sample_haar(2, 100).dense()).norm() > 0.1);
    CHECK_THROWS_AS(sample_haar(13, 0), DataError);
}

TEST_CASE("Haar first moment") {
    Rng rng(12);
    CMatrix acc = CMatrix::Zero(4, 4);
    const int samples = 100000;
    for (int k = 0; k < samples; ++k) {
        const CVector col = sample_haar(2, rng).dense().col(0);
        acc += col * col.adjoint();
    }
    acc /= samples;
    CHECK((acc - CMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 0.01);
    Rng r2(3);
    const CMatrix o = random_operator(4, r2);
    CHECK((haar_first_moment(o) - o.trace() / 4.0 * CMatrix::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("second moment closed form") {
    const CMatrix id = CMatrix::Identity(4, 4);
    const CMatrix swap = swap_operator(2);
    CHECK((haar_second_moment(id, 2) - id).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((haar_second_moment(swap, 2) - swap).cwiseAbs().maxCoeff() < 1e-14);
    CMatrix o = CMatrix::Zero(4, 4);
    o(0, 0) = 1.0;
    CHECK((haar_second_moment(o, 2) - (id + swap) / 6.0).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS_AS(haar_second_moment(CMatrix::Identity(3, 3), 2), DataError);
    // swap really swaps |i,j>
    CHECK(std::abs(swap(1 * 2 + 0, 0 * 2 + 1) - cplx(1.0)) < 1e-15);
}

TEST_CASE("Clifford group enumeration") {
    const auto c1 = enumerate_clifford_group(1);
    CHECK(c1.size() == 24);
    for (std::size_t a = 0; a < c1.size(); ++a) {
        CHECK(conjugates_paulis_to_paulis(c1[a].dense()));
        CHECK(unitarity_error(c1[a].dense()) < 1e-12);
        for (std::size_t b = a + 1; b < c1.size(); ++b) {
            CHECK_FALSE(equal_up_to_phase(c1[a].dense(), c1[b].dense()));
        }
    }
    const auto c2 = enumerate_clifford_group(2);
    CHECK(c2.size() == 11520);
    bool all_clifford = true;
    for (const auto &u : c2) {
        all_clifford = all_clifford && conjugates_paulis_to_paulis(u.dense());
    }
    CHECK(all_clifford);
    CHECK_THROWS_AS(enumerate_clifford_group(3), DataError);
    CHECK_FALSE(conjugates_paulis_to_paulis(sample_haar(1, 5).dense()));
}

TEST_CASE("Clifford group is a 2-design at n = 1") {
    const auto c1 = enumerate_clifford_group(1);
    Rng rng(21);
    for (int k = 0; k < 20; ++k) {
        const CMatrix o = random_operator(4, rng);
        CHECK((twirl_second_moment(c1, o) - haar_second_moment(o, 2)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("random Cliffords") {
    for (int n = 1; n <= 6; ++n) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto u = sample_clifford(n, seed);
            CHECK(conjugates_paulis_to_paulis(u.dense()));
            for (const auto &g : u.gates()) {
                CHECK((g.kind == GateKind::H || g.kind == GateKind::S || g.kind == GateKind::CX));
            }
        }
    }
    const auto a = sample_clifford(3, 77);
    const auto b = sample_clifford(3, 77);
    REQUIRE(a.gates().size() == b.gates().size());
    for (std::size_t k = 0; k < a.gates().size(); ++k) {
        CHECK(a.gates()[k].kind == b.gates()[k].kind);
        CHECK(a.gates()[k].targets == b.gates()[k].targets);
    }
    CHECK_THROWS_AS(sample_clifford(13, 0), DataError);
}

TEST_CASE("single-qubit Clifford sampling is uniform") {
    const auto group = enumerate_clifford_group(1);
    std::vector<int> counts(group.size(), 0);
    Rng rng(2024);
    const int samples = 100000;
    for (int k = 0; k < samples; ++k) {
        const CMatrix u = sample_clifford(1, rng).dense();
        int hit = -1;
        for (std::size_t g = 0; g < group.size(); ++g) {
            if (equal_up_to_phase(u, group[g].dense())) {
                hit = static_cast<int>(g);
                break;
            }
        }
        REQUIRE(hit >= 0);
        ++counts[static_cast<std::size_t>(hit)];
    }
    const double p = 1.0 / 24.0;
    const double mean = samples * p;
    const double sigma = std::sqrt(samples * p * (1 - p));
    for (int c : counts) {
        CHECK(std::abs(c - mean) < 3 * sigma);
    }
}

TEST_CASE("two-qubit Clifford sampling covers the group evenly") {
    const auto group = enumerate_clifford_group(2);
    // bucket by the image of X_0 under conjugation, a 15-valued (times sign) statistic
    auto key = [](const CMatrix &u) {
        CMatrix x0 = CMatrix::Zero(4, 4);
        x0(0, 1) = x0(1, 0) = x0(2, 3) = x0(3, 2) = 1.0;
        const CMatrix img = u * x0 * u.adjoint();
        std::string k;
        for (Eigen::Index r = 0; r < 4; ++r) {
            for (Eigen::Index c = 0; c < 4; ++c) {
                const cplx v = img(r, c);
                k += std::to_string(static_cast<int>(std::lround(v.real()))) + "," +
                     std::to_string(static_cast<int>(std::lround(v.imag()))) + ";";
            }
        }
        return k;
    };
    std::map<std::string, int> expected;
    for (const auto &u : group) {
        ++expected[key(u.dense())];
    }
    CHECK(expected.size() == 30);
    std::map<std::string, int> seen;
    Rng rng(5);
    const int samples = 30000;
    for (int k = 0; k < samples; ++k) {
        ++seen[key(sample_clifford(2, rng).dense())];
    }
    CHECK(seen.size() == expected.size());
    const double mean = samples / 30.0;
    const double sigma = std::sqrt(samples * (1.0 / 30) * (29.0 / 30));
    for (const auto &[k, c] : seen) {
        CHECK(expected.count(k) == 1);
        CHECK(std::abs(c - mean) < 4 * sigma);
    }
}

TEST_CASE("hardware-efficient rotators") {
    const auto u = sample_hardware_efficient(4, 2, 1);
    CHECK(u.gates().size() == 14);
    CHECK(unitarity_error(u.dense()) < 1e-10);
    CHECK((u.dense() - sample_hardware_efficient(4, 2, 2).dense()).norm() > 1e-3);
    CHECK((u.dense() - sample_hardware_efficient(4, 2, 1).dense()).norm() == 0.0);
    UnitaryEnsemble bad{EnsembleKind::HardwareEfficient, 2, 0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("rotator application matches the dense form") {
    Rng rng(4);
    for (const auto kind : {EnsembleKind::Haar, EnsembleKind::Clifford, EnsembleKind::HardwareEfficient}) {
        const auto u = sample_rotator({kind, 3, 2}, 9);
        CVector v(8);
        for (Eigen::Index k = 0; k < 8; ++k) {
            v(k) = cplx(uniform01(rng), uniform01(rng));
        }
        CHECK((u.apply(v) - u.dense() * v).norm() < 1e-12);
        CHECK(u.ensemble() == kind);
    }
    CHECK(ensemble_kind_from_string("clifford-group") == EnsembleKind::Clifford);
    CHECK(ensemble_kind_from_string("haar") == EnsembleKind::Haar);
    CHECK_THROWS_AS(ensemble_kind_from_string("gaussian"), ConfigError);
}

}
