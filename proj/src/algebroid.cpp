#include "dgd/algebroid.hpp"

#include <stdexcept>

namespace dgd {

Section LieAlgebroidModel::zeroSection() const { return Section(fiberDim, Poly(baseDim)); }

Section LieAlgebroidModel::constSection(const Vec& v) const {
    if (v.size() != fiberDim) throw std::invalid_argument("constSection: wrong size");
    Section s;
    for (const auto& c : v) s.push_back(Poly::constant(baseDim, c));
    return s;
}

namespace {

std::vector<std::vector<Poly>> zeroAnchor(std::size_t baseDim, std::size_t fiberDim) {
    return std::vector<std::vector<Poly>>(baseDim, std::vector<Poly>(fiberDim, Poly(baseDim)));
}

std::vector<std::vector<Section>> zeroStructure(std::size_t baseDim, std::size_t fiberDim) {
    return std::vector<std::vector<Section>>(
        fiberDim, std::vector<Section>(fiberDim, Section(fiberDim, Poly(baseDim))));
}

} // namespace

LieAlgebroidModel tangentAlgebroid(std::size_t n) {
    LieAlgebroidModel A;
    A.baseDim = n;
    A.fiberDim = n;
    A.anchor = zeroAnchor(n, n);
    for (std::size_t i = 0; i < n; ++i) A.anchor[i][i] = Poly::constant(n, Rat(1));
    A.structure = zeroStructure(n, n);
    A.label = "T(R^" + std::to_string(n) + ")";
    return A;
}

LieAlgebroidModel abelianAlgebroid(std::size_t baseDim, std::size_t fiberDim) {
    LieAlgebroidModel A;
    A.baseDim = baseDim;
    A.fiberDim = fiberDim;
    A.anchor = zeroAnchor(baseDim, fiberDim);
    A.structure = zeroStructure(baseDim, fiberDim);
    A.label = "abelian";
    return A;
}

LieAlgebroidModel so3Algebroid() {
    LieAlgebroidModel A;
    A.baseDim = 0;
    A.fiberDim = 3;
    A.anchor = zeroAnchor(0, 3);
    A.structure = zeroStructure(0, 3);
    // [e_i, e_j] = eps_ijk e_k
    auto setC = [&](std::size_t i, std::size_t j, std::size_t k, long s) {
        A.structure[i][j][k] = Poly::constant(0, Rat(s));
        A.structure[j][i][k] = Poly::constant(0, Rat(-s));
    };
    setC(0, 1, 2, 1);
    setC(1, 2, 0, 1);
    setC(2, 0, 1, 1);
    A.label = "so3";
    return A;
}

LieAlgebroidModel constantAnchorAlgebroid(const Mat& a) {
    LieAlgebroidModel A;
    A.baseDim = a.rows();
    A.fiberDim = a.cols();
    A.anchor = zeroAnchor(A.baseDim, A.fiberDim);
    for (std::size_t mu = 0; mu < A.baseDim; ++mu)
        for (std::size_t i = 0; i < A.fiberDim; ++i)
            A.anchor[mu][i] = Poly::constant(A.baseDim, a.at(mu, i));
    A.structure = zeroStructure(A.baseDim, A.fiberDim);
    A.label = "constant-anchor";
    return A;
}

LieAlgebroidModel directSum(const LieAlgebroidModel& A, const LieAlgebroidModel& B) {
    LieAlgebroidModel S;
    S.baseDim = A.baseDim + B.baseDim;
    S.fiberDim = A.fiberDim + B.fiberDim;
    S.anchor = zeroAnchor(S.baseDim, S.fiberDim);
    for (std::size_t mu = 0; mu < A.baseDim; ++mu)
        for (std::size_t i = 0; i < A.fiberDim; ++i)
            S.anchor[mu][i] = A.anchor[mu][i].embed(S.baseDim, 0);
    for (std::size_t mu = 0; mu < B.baseDim; ++mu)
        for (std::size_t i = 0; i < B.fiberDim; ++i)
            S.anchor[A.baseDim + mu][A.fiberDim + i] = B.anchor[mu][i].embed(S.baseDim, A.baseDim);
    S.structure = zeroStructure(S.baseDim, S.fiberDim);
    for (std::size_t i = 0; i < A.fiberDim; ++i)
        for (std::size_t j = 0; j < A.fiberDim; ++j)
            for (std::size_t k = 0; k < A.fiberDim; ++k)
                S.structure[i][j][k] = A.structure[i][j][k].embed(S.baseDim, 0);
    for (std::size_t i = 0; i < B.fiberDim; ++i)
        for (std::size_t j = 0; j < B.fiberDim; ++j)
            for (std::size_t k = 0; k < B.fiberDim; ++k)
                S.structure[A.fiberDim + i][A.fiberDim + j][A.fiberDim + k] =
                    B.structure[i][j][k].embed(S.baseDim, A.baseDim);
    S.label = A.label + "+" + B.label;
    return S;
}

LieAlgebroidModel lieAlgebroidOf(const LinGroupoid& G) {
    // Registered families are the linear coordinate groupoids produced by the
    // model constructors (pair, vector-space, products, cores, and their
    // tangent/cotangent/dual prolongations). For all of them right
    // translations have constant differential, so constant sections have
    // vanishing bracket and the algebroid is the constant-anchor model on
    // ker(T alpha) with anchor T(beta).
    if (G.family.empty())
        throw std::invalid_argument("lieAlgebroidOf: unregistered family");
    if (G.family == "vector") return abelianAlgebroid(0, G.arrowDim);
    Mat F = G.src.kernelBasis();
    Mat a = G.tgt * F;
    LieAlgebroidModel A = constantAnchorAlgebroid(a);
    A.label = "A(" + G.label + ")";
    return A;
}

std::vector<Poly> anchorOf(const LieAlgebroidModel& A, const Section& X) {
    if (X.size() != A.fiberDim) throw std::invalid_argument("anchorOf: bad section");
    std::vector<Poly> v(A.baseDim, Poly(A.baseDim));
    for (std::size_t mu = 0; mu < A.baseDim; ++mu)
        for (std::size_t i = 0; i < A.fiberDim; ++i) v[mu] = v[mu] + A.anchor[mu][i] * X[i];
    return v;
}

Section bracketSections(const LieAlgebroidModel& A, const Section& X, const Section& Y) {
    if (X.size() != A.fiberDim || Y.size() != A.fiberDim)
        throw std::invalid_argument("bracketSections: bad sections");
    Section out(A.fiberDim, Poly(A.baseDim));
    for (std::size_t i = 0; i < A.fiberDim; ++i)
        for (std::size_t j = 0; j < A.fiberDim; ++j) {
            Poly fij = X[i] * Y[j];
            if (fij.isZero()) continue;
            for (std::size_t k = 0; k < A.fiberDim; ++k)
                out[k] = out[k] + fij * A.structure[i][j][k];
        }
    std::vector<Poly> aX = anchorOf(A, X), aY = anchorOf(A, Y);
    for (std::size_t k = 0; k < A.fiberDim; ++k) {
        for (std::size_t mu = 0; mu < A.baseDim; ++mu)
            out[k] = out[k] + aX[mu] * Y[k].diff(mu) - aY[mu] * X[k].diff(mu);
    }
    return out;
}

Section sampleSection(Rng& rng, const LieAlgebroidModel& A, unsigned maxDeg) {
    Section s;
    for (std::size_t i = 0; i < A.fiberDim; ++i) s.push_back(samplePoly(rng, A.baseDim, maxDeg));
    return s;
}

Report validateAlgebroid(const LieAlgebroidModel& A, Rng& rng, std::size_t trials) {
    Report r;
    r.suite = "algebroid";
    bool anti = true;
    for (std::size_t i = 0; i < A.fiberDim && anti; ++i)
        for (std::size_t j = 0; j < A.fiberDim && anti; ++j)
            for (std::size_t k = 0; k < A.fiberDim && anti; ++k)
                if (A.structure[i][j][k] != -A.structure[j][i][k]) anti = false;
    r.add("structure-antisymmetric", anti);

    bool jac = true, leib = true, anch = true;
    for (std::size_t t = 0; t < trials && (jac || leib); ++t) {
        Section X = sampleSection(rng, A, 2), Y = sampleSection(rng, A, 2), Z = sampleSection(rng, A, 2);
        Section j1 = bracketSections(A, X, bracketSections(A, Y, Z));
        Section j2 = bracketSections(A, Y, bracketSections(A, Z, X));
        Section j3 = bracketSections(A, Z, bracketSections(A, X, Y));
        for (std::size_t k = 0; k < A.fiberDim; ++k)
            if (!(j1[k] + j2[k] + j3[k]).isZero()) jac = false;

        Poly f = samplePoly(rng, A.baseDim, 2);
        Section fY = Y;
        for (auto& c : fY) c = c * f;
        Section lhs = bracketSections(A, X, fY);
        Section rhs = bracketSections(A, X, Y);
        std::vector<Poly> aX = anchorOf(A, X);
        Poly aXf(A.baseDim);
        for (std::size_t mu = 0; mu < A.baseDim; ++mu) aXf = aXf + aX[mu] * f.diff(mu);
        for (std::size_t k = 0; k < A.fiberDim; ++k)
            if (lhs[k] != rhs[k] * f + aXf * Y[k]) leib = false;

        // anchor is a homomorphism into vector fields
        std::vector<Poly> lhsv = anchorOf(A, bracketSections(A, X, Y));
        PolyMap aXm(A.baseDim, anchorOf(A, X)), aYm(A.baseDim, anchorOf(A, Y));
        PolyMap br = vfBracket(aXm, aYm);
        for (std::size_t mu = 0; mu < A.baseDim; ++mu)
            if (lhsv[mu] != br.component(mu)) anch = false;
    }
    r.add("jacobi", jac);
    r.add("leibniz", leib);
    r.add("anchor-homomorphism", anch);
    return r;
}

} // namespace dgd
