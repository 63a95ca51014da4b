// Lie algebroid models with polynomial structure functions and anchors,
// brackets on polynomial sections, and the registered-family extractor.
#pragma once

#include "dgd/coord.hpp"
#include "dgd/poly.hpp"
#include "dgd/report.hpp"

#include <vector>

namespace dgd {

// Sections are vectors of fiberDim polynomials in the baseDim variables.
using Section = std::vector<Poly>;

struct LieAlgebroidModel {
    std::size_t baseDim = 0, fiberDim = 0;
    // anchor[mu][i]: polynomial coefficient of d/dx_mu in a(e_i)
    std::vector<std::vector<Poly>> anchor;
    // structure[i][j]: the section [e_i, e_j] (antisymmetric in i, j)
    std::vector<std::vector<Section>> structure;
    std::string label;

    Section zeroSection() const;
    Section constSection(const Vec& v) const;
};

LieAlgebroidModel tangentAlgebroid(std::size_t n);
LieAlgebroidModel abelianAlgebroid(std::size_t baseDim, std::size_t fiberDim);
LieAlgebroidModel so3Algebroid();
// Constant anchor matrix, zero structure functions (frame-transported
// tangent algebroid); requires nothing of `a` beyond shape.
LieAlgebroidModel constantAnchorAlgebroid(const Mat& a);
LieAlgebroidModel directSum(const LieAlgebroidModel& A, const LieAlgebroidModel& B);

// Registered families only: pair groupoids, vector-space groupoids, products.
// Throws std::invalid_argument otherwise.
LieAlgebroidModel lieAlgebroidOf(const LinGroupoid& G);

// a(X) as a polynomial vector field on the base.
std::vector<Poly> anchorOf(const LieAlgebroidModel& A, const Section& X);
Section bracketSections(const LieAlgebroidModel& A, const Section& X, const Section& Y);

// Jacobi and Leibniz on sampled polynomial sections of degree <= 2.
Report validateAlgebroid(const LieAlgebroidModel& A, Rng& rng, std::size_t trials);

Section sampleSection(Rng& rng, const LieAlgebroidModel& A, unsigned maxDeg);

} // namespace dgd
