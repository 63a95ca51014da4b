// Poisson bivectors with polynomial coefficients, Schouten and Koszul
// calculus, multiplicativity of Poisson groupoid structures, the D_H/D_V
// duality maps of Poisson double groupoids, and the instance-level theorem
// verifications built on them.
#pragma once

#include "dgd/algebroid.hpp"
#include "dgd/coord.hpp"
#include "dgd/prolong.hpp"
#include "dgd/report.hpp"

namespace dgd {

struct PolyBivector {
    std::size_t dim = 0;
    std::vector<std::vector<Poly>> entries;  // antisymmetric matrix of polynomials

    const Poly& at(std::size_t i, std::size_t j) const { return entries[i][j]; }
};

PolyBivector constantBivector(const Mat& pi);
PolyBivector zeroBivector(std::size_t dim);
bool isAntisymmetric(const PolyBivector& pi);

// Components of [pi, pi] for i < j < k; all zero iff pi is Poisson.
std::vector<Poly> schoutenJacobi(const PolyBivector& pi);
bool isPoisson(const PolyBivector& pi);

Poly poissonBracket(const PolyBivector& pi, const Poly& f, const Poly& g);
// (pi^# omega)^j = sum_i omega_i pi^{ij}
std::vector<Poly> sharpApply(const PolyBivector& pi, const std::vector<Poly>& omega);
Mat sharpOf(const Mat& pi);  // constant case: pi transposed

// Complete (tangent) lift to the doubled coordinates.
PolyBivector tangentLiftBivector(const PolyBivector& pi);

// Linear Poisson structure on A*-coordinates (x, xi) defined by
// {l_X, l_Y} = l_[X,Y] and {l_X, f} = a(X) f.
PolyBivector liePoisson(const LieAlgebroidModel& A);

// Koszul bracket of one-forms; `oracle` is an independently expanded form.
std::vector<Poly> koszulBracket(const PolyBivector& pi, const std::vector<Poly>& omega,
                                const std::vector<Poly>& theta);
std::vector<Poly> koszulBracketOracle(const PolyBivector& pi, const std::vector<Poly>& omega,
                                      const std::vector<Poly>& theta);

// Groupoid with a constant Poisson bivector on its arrow space.
struct LinPoissonGroupoid {
    LinGroupoid G;
    Mat pi;
};

// Base map of pi^# as a VB-groupoid morphism: a_*(phi) = T(alpha)(pi^# 1~_phi).
Mat aStarOf(const LinPoissonGroupoid& P);

// pi^# intertwines all five structure maps of T*G over TG; core map is -a_*^T.
Report checkMultiplicative(const LinPoissonGroupoid& P);

// Lie algebroid structure on A*G (Koszul bracket on conormal sections of the
// unit submanifold, anchor a_*).
LieAlgebroidModel dualAlgebroid(const LinPoissonGroupoid& P);

// Cross-checks: extension independence of the conormal Koszul bracket, and
// the Lie-Poisson structure of the dual algebroid against the core of the
// tangent lift.
Report verifyDualAlgebroid(const LinPoissonGroupoid& P, Rng& rng, std::size_t trials);

struct LinPoissonDouble {
    LinDouble D;
    Mat pi;
};

// S = M^4 over R^{2k} with the product-with-reversed-signs bivector.
LinPoissonDouble symplecticDoubleM4(std::size_t k);

Report poissonDoublePredicate(const LinPoissonDouble& PD);
Report symplecticDoublePredicate(const LinPoissonDouble& PD);

struct DMaps {
    Mat DH;      // (A V)* -> A H coordinates
    Mat DV;      // (A H)* -> A V coordinates
    Mat aStarV;  // anchor A*_V S -> T H (fiber part)
    Mat aStarH;  // anchor A*_H S -> T V
};

DMaps computeDMaps(const LinPoissonDouble& PD);

// Prop DD (D_V^* = -D_H), the pair-example values D_V = a_*, D_H = -a_*^*,
// and flip invariance of the induced base structure.
Report verifyDD(const LinPoissonDouble& PD);

// Thm sideduality: D maps are isomorphisms, the core is a symplectic
// groupoid realizing the base, and D_V preserves anchors and brackets.
Report verifySideDuality(const LinPoissonDouble& PD, Rng& rng, std::size_t sectionPairs);

// Thm pairs + Prop DRI + the Tulczyjew remark, on the symplectic double T*S.
Report verifyThmPairs(const LinDouble& S, Rng& rng);

// Polynomial sections of the dual of a constant-fiber VB-groupoid that are
// groupoid morphisms over a base section; computed as the exact kernel of
// the linear conditions on polynomial coefficients.
struct MorphicFamily {
    std::vector<Section> sections;      // fiber components in arrow variables
    std::vector<Section> baseSections;  // K* components in base variables
};

MorphicFamily morphicSections(const LinVBGroupoid& om, unsigned deg);

// eq-ellmor equivalence, the eq-ell projection identity, and morphic bracket
// closure for Upsilon = TG of a Poisson groupoid; includes fault injection.
Report morphicSectionChecks(const LinPoissonGroupoid& P, Rng& rng, std::size_t minSections);

// Thm LAPVB, forward and converse, on registered instances.
Report verifyLapvbForward(const LinPoissonGroupoid& P, Rng& rng);
Report verifyLapvbConverse(const LinPoissonGroupoid& P, Rng& rng);

// Thm needed: (A*_V S; H, A*C; P) is an LA-groupoid, on instances.
Report verifyNeeded(const LinPoissonDouble& PD, Rng& rng);

} // namespace dgd
