#include "wolb/model.hpp"

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace wolb {

WolbachiaParams WolbachiaParams::checked(double w, double d) {
    const bool ok = std::isfinite(w) && std::isfinite(d) && w > 0.0 && w <= 1.0 && d > 0.0 &&
                    d <= 1.0;
    if (!ok) {
        throw ParamDomainError("parameters out of domain: w and d must lie in (0,1], got w=" +
                               std::to_string(w) + ", d=" + std::to_string(d));
    }
    return WolbachiaParams{w, d};
}

InheritanceTable build_inheritance_table(const WolbachiaParams& p0) {
    const WolbachiaParams p = WolbachiaParams::checked(p0.w, p0.d);
    InheritanceTable t;
    t.at(1, 1, 1) = 1.0;
    t.at(1, 2, 1) = 1.0 - p.w;
    t.at(2, 1, 1) = 1.0 - p.d;
    t.at(2, 2, 1) = (1.0 - p.d) * (1.0 - p.w);
    t.at(1, 1, 2) = 0.0;
    t.at(1, 2, 2) = 0.0;
    t.at(2, 1, 2) = p.d;
    t.at(2, 2, 2) = p.d;
    return t;
}

StructureTensor build_algebra(const WolbachiaParams& p) {
    const InheritanceTable tab = build_inheritance_table(p);
    StructureTensor t(kDimW);
    // Female indices {0,1} carry type i = a+1; male indices {2,3} type k = b-1.
    for (int a = 0; a < 2; ++a) {
        for (int b = 2; b < 4; ++b) {
            const int i = a + 1;
            const int k = b - 1;
            const double half1 = 0.5 * tab.at(i, k, 1);
            const double half2 = 0.5 * tab.at(i, k, 2);
            t.set(a, b, kF1, half1);
            t.set(a, b, kF2, half2);
            t.set(a, b, kM1, half1);
            t.set(a, b, kM2, half2);
            t.set(b, a, kF1, half1);
            t.set(b, a, kF2, half2);
            t.set(b, a, kM1, half1);
            t.set(b, a, kM2, half2);
        }
    }
    t.symmetrize();
    return t;
}

namespace {

enum class Gamete { X, Xplus, Y, Yplus };

using GameteDist = std::vector<std::pair<Gamete, double>>;

GameteDist egg_distribution(int female_type, double d) {
    if (female_type == 1) return {{Gamete::X, 1.0}};
    return {{Gamete::Xplus, d}, {Gamete::X, 1.0 - d}};
}

GameteDist sperm_distribution(int male_type, double w) {
    if (male_type == 1) return {{Gamete::X, 0.5}, {Gamete::Y, 0.5}};
    return {{Gamete::Xplus, 0.5 * w},
            {Gamete::Yplus, 0.5 * w},
            {Gamete::X, 0.5 * (1.0 - w)},
            {Gamete::Y, 0.5 * (1.0 - w)}};
}

// Zygote outcome: basis index of the offspring, or -1 for a dead zygote
// (uninfected egg fertilized by an infected sperm).
int zygote(Gamete egg, Gamete sperm) {
    const bool egg_infected = egg == Gamete::Xplus;
    const bool sperm_infected = sperm == Gamete::Xplus || sperm == Gamete::Yplus;
    if (!egg_infected && sperm_infected) return -1;
    const bool male = sperm == Gamete::Y || sperm == Gamete::Yplus;
    if (egg_infected) return male ? kM2 : kF2;
    return male ? kM1 : kF1;
}

}  // namespace

bool punnett_cross_check(const WolbachiaParams& p0, double tol) {
    const WolbachiaParams p = WolbachiaParams::checked(p0.w, p0.d);
    const InheritanceTable tab = build_inheritance_table(p);
    const StructureTensor t = build_algebra(p);

    for (int i = 1; i <= 2; ++i) {
        for (int k = 1; k <= 2; ++k) {
            std::array<double, 4> mass = {0, 0, 0, 0};
            for (const auto& [egg, pe] : egg_distribution(i, p.d)) {
                for (const auto& [sperm, ps] : sperm_distribution(k, p.w)) {
                    const int child = zygote(egg, sperm);
                    if (child >= 0) mass[child] += pe * ps;
                }
            }
            // Whole-population zygote masses double to inheritance
            // coefficients; the tensor stores the undoubled values.
            const int a = i - 1;
            const int b = k + 1;
            for (int j = 1; j <= 2; ++j) {
                const double female_mass = mass[j - 1];
                const double male_mass = mass[j + 1];
                if (std::fabs(2.0 * female_mass - tab.at(i, k, j)) > tol) return false;
                if (std::fabs(2.0 * male_mass - tab.at(i, k, j)) > tol) return false;
                if (std::fabs(t.at(a, b, j - 1) - female_mass) > tol) return false;
                if (std::fabs(t.at(a, b, j + 1) - male_mass) > tol) return false;
            }
        }
    }
    return true;
}

}  // namespace wolb
