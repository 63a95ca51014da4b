#include "dgd/coord.hpp"

#include <stdexcept>

namespace dgd {

namespace {

Mat blockDiag(const Mat& a, const Mat& b) {
    Mat m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

// Row selector: picks the coordinate ranges [off, off+len) in order.
Mat selector(std::size_t total, std::initializer_list<std::pair<std::size_t, std::size_t>> ranges) {
    std::size_t rows = 0;
    for (auto& r : ranges) rows += r.second;
    Mat m(rows, total);
    std::size_t i = 0;
    for (auto& [off, len] : ranges)
        for (std::size_t j = 0; j < len; ++j, ++i) m.at(i, off + j) = Rat(1);
    return m;
}

} // namespace

Mat composablePairBasis(const LinGroupoid& G) {
    return Mat::hcat(G.src, -G.tgt).kernelBasis();
}

Mat composableTripleBasis(const LinGroupoid& G) {
    std::size_t A = G.arrowDim;
    Mat row1 = Mat::hcat(Mat::hcat(G.src, -G.tgt), Mat::zero(G.baseDim, A));
    Mat row2 = Mat::hcat(Mat::hcat(Mat::zero(G.baseDim, A), G.src), -G.tgt);
    return Mat::vcat(row1, row2).kernelBasis();
}

Report validateLinGroupoid(const LinGroupoid& G) {
    Report r;
    r.suite = "lin-groupoid";
    std::size_t A = G.arrowDim, m = G.baseDim;
    bool shape = G.src.rows() == m && G.src.cols() == A && G.tgt.rows() == m &&
                 G.tgt.cols() == A && G.unit.rows() == A && G.unit.cols() == m &&
                 G.inv.rows() == A && G.inv.cols() == A && G.comp.rows() == A &&
                 G.comp.cols() == 2 * A;
    r.add("shape", shape);
    if (!shape) return r;

    Mat Im = Mat::identity(m), Ia = Mat::identity(A);
    r.add("src-unit", G.src * G.unit == Im);
    r.add("tgt-unit", G.tgt * G.unit == Im);

    Mat W = composablePairBasis(G);
    Mat prH = selector(2 * A, {{0, A}});
    Mat prG = selector(2 * A, {{A, A}});
    r.add("comp-src", G.src * G.comp * W == G.src * prG * W);
    r.add("comp-tgt", G.tgt * G.comp * W == G.tgt * prH * W);

    r.add("left-unit", G.comp * Mat::vcat(G.unit * G.tgt, Ia) == Ia);
    r.add("right-unit", G.comp * Mat::vcat(Ia, G.unit * G.src) == Ia);

    r.add("inv-src-tgt", G.src * G.inv == G.tgt && G.tgt * G.inv == G.src);
    r.add("inv-left", G.comp * Mat::vcat(G.inv, Ia) == G.unit * G.src);
    r.add("inv-right", G.comp * Mat::vcat(Ia, G.inv) == G.unit * G.tgt);

    Mat T = composableTripleBasis(G);
    Mat sK = selector(3 * A, {{0, A}}), sH = selector(3 * A, {{A, A}}), sG = selector(3 * A, {{2 * A, A}});
    Mat kh = G.comp * Mat::vcat(sK * T, sH * T);
    Mat hg = G.comp * Mat::vcat(sH * T, sG * T);
    r.add("associativity", G.comp * Mat::vcat(kh, sG * T) == G.comp * Mat::vcat(sK * T, hg));
    return r;
}

LinGroupoid pairGroupoid(std::size_t n) {
    LinGroupoid G;
    G.baseDim = n;
    G.arrowDim = 2 * n;
    G.src = selector(2 * n, {{n, n}});
    G.tgt = selector(2 * n, {{0, n}});
    G.unit = Mat::vcat(Mat::identity(n), Mat::identity(n));
    G.inv = selector(2 * n, {{n, n}, {0, n}});
    G.comp = selector(4 * n, {{0, n}, {3 * n, n}});
    G.family = "pair";
    G.familyParam = n;
    G.label = "pair(" + std::to_string(n) + ")";
    return G;
}

LinGroupoid vectorSpaceGroupoid(std::size_t k) {
    LinGroupoid G;
    G.baseDim = 0;
    G.arrowDim = k;
    G.src = Mat(0, k);
    G.tgt = Mat(0, k);
    G.unit = Mat(k, 0);
    G.inv = -Mat::identity(k);
    G.comp = Mat::hcat(Mat::identity(k), Mat::identity(k));
    G.family = "vector";
    G.familyParam = k;
    G.label = "vector(" + std::to_string(k) + ")";
    return G;
}

LinGroupoid productGroupoid(const LinGroupoid& a, const LinGroupoid& b) {
    LinGroupoid G;
    G.baseDim = a.baseDim + b.baseDim;
    G.arrowDim = a.arrowDim + b.arrowDim;
    G.src = blockDiag(a.src, b.src);
    G.tgt = blockDiag(a.tgt, b.tgt);
    G.unit = blockDiag(a.unit, b.unit);
    G.inv = blockDiag(a.inv, b.inv);
    std::size_t A1 = a.arrowDim, A2 = b.arrowDim;
    Mat selA = selector(2 * (A1 + A2), {{0, A1}, {A1 + A2, A1}});
    Mat selB = selector(2 * (A1 + A2), {{A1, A2}, {2 * A1 + A2, A2}});
    G.comp = Mat::vcat(a.comp * selA, b.comp * selB);
    G.family = "product";
    G.label = a.label + "x" + b.label;
    return G;
}

CoordGroupoid toCoord(const LinGroupoid& G) {
    CoordGroupoid C;
    C.baseDim = G.baseDim;
    C.arrowDim = G.arrowDim;
    C.src = PolyMap::linear(G.src);
    C.tgt = PolyMap::linear(G.tgt);
    C.unit = PolyMap::linear(G.unit);
    C.inv = PolyMap::linear(G.inv);
    C.comp = PolyMap::linear(G.comp);
    C.pairParam = PolyMap::linear(composablePairBasis(G));
    C.tripleParam = PolyMap::linear(composableTripleBasis(G));
    C.lin = G;
    C.label = G.label;
    return C;
}

Report validateCoordGroupoid(const CoordGroupoid& G, Rng& rng, std::size_t trials,
                             unsigned maxSymbolicDegree) {
    Report r;
    r.suite = "coord-groupoid";
    std::size_t A = G.arrowDim, m = G.baseDim;
    unsigned deg = std::max({G.src.degree(), G.tgt.degree(), G.unit.degree(), G.inv.degree(),
                             G.comp.degree()});
    bool symbolic = deg * deg <= maxSymbolicDegree * maxSymbolicDegree && deg <= maxSymbolicDegree;
    auto eq = [&](const PolyMap& f, const PolyMap& g) {
        return symbolic ? f == g : equalOnSamples(f, g, rng, trials);
    };
    PolyMap idA = PolyMap::identity(A), idM = PolyMap::identity(m);

    r.add("src-unit", eq(G.src.compose(G.unit), idM));
    r.add("tgt-unit", eq(G.tgt.compose(G.unit), idM));

    const PolyMap& W = G.pairParam;
    std::size_t p = W.domainDim();
    PolyMap prH = PolyMap::projection(2 * A, [&] {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < A; ++i) idx.push_back(i);
        return idx;
    }());
    PolyMap prG = PolyMap::projection(2 * A, [&] {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < A; ++i) idx.push_back(A + i);
        return idx;
    }());
    r.add("comp-src", eq(G.src.compose(G.comp).compose(W), G.src.compose(prG).compose(W)));
    r.add("comp-tgt", eq(G.tgt.compose(G.comp).compose(W), G.tgt.compose(prH).compose(W)));

    r.add("left-unit", eq(G.comp.compose(PolyMap::pairing(G.unit.compose(G.tgt), idA)), idA));
    r.add("right-unit", eq(G.comp.compose(PolyMap::pairing(idA, G.unit.compose(G.src))), idA));

    r.add("inv-src", eq(G.src.compose(G.inv), G.tgt));
    r.add("inv-tgt", eq(G.tgt.compose(G.inv), G.src));
    r.add("inv-left", eq(G.comp.compose(PolyMap::pairing(G.inv, idA)), G.unit.compose(G.src)));
    r.add("inv-right", eq(G.comp.compose(PolyMap::pairing(idA, G.inv)), G.unit.compose(G.tgt)));

    const PolyMap& T = G.tripleParam;
    auto proj3 = [&](std::size_t block) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < A; ++i) idx.push_back(block * A + i);
        return PolyMap::projection(3 * A, idx);
    };
    PolyMap sK = proj3(0).compose(T), sH = proj3(1).compose(T), sG = proj3(2).compose(T);
    PolyMap kh = G.comp.compose(PolyMap::pairing(sK, sH));
    PolyMap hg = G.comp.compose(PolyMap::pairing(sH, sG));
    r.add("associativity", eq(G.comp.compose(PolyMap::pairing(kh, sG)),
                              G.comp.compose(PolyMap::pairing(sK, hg))));
    (void)p;
    (void)trials;
    return r;
}

LinGroupoid totalGroupoid(const LinVBGroupoid& om) {
    const LinGroupoid& b = om.base;
    std::size_t A = b.arrowDim, F = om.fiberDim;
    LinGroupoid t;
    t.baseDim = b.baseDim + om.sideDim;
    t.arrowDim = A + F;
    t.src = blockDiag(b.src, om.srcFib);
    t.tgt = blockDiag(b.tgt, om.tgtFib);
    t.unit = blockDiag(b.unit, om.unitFib);
    t.inv = blockDiag(b.inv, om.invFib);
    Mat selArr = selector(2 * (A + F), {{0, A}, {A + F, A}});
    Mat selFib = selector(2 * (A + F), {{A, F}, {2 * A + F, F}});
    t.comp = Mat::vcat(b.comp * selArr, om.compFib * selFib);
    t.family = "total";
    t.label = om.label;
    return t;
}

Report validateLinVB(const LinVBGroupoid& om) {
    Report r;
    r.suite = "lin-vb-groupoid";
    r.merge(validateLinGroupoid(om.base), "base");
    r.merge(validateLinGroupoid(totalGroupoid(om)), "total");
    r.add("double-source-surjective", om.srcFib.rank() == om.sideDim);
    return r;
}

Mat coreFrame(const LinVBGroupoid& om) { return om.srcFib.kernelBasis(); }

Mat coreDelta(const LinVBGroupoid& om) { return om.tgtFib * coreFrame(om); }

LinVBGroupoid tangentVB(const LinGroupoid& G) {
    LinVBGroupoid t;
    t.base = G;
    t.sideDim = G.baseDim;
    t.fiberDim = G.arrowDim;
    t.srcFib = G.src;
    t.tgtFib = G.tgt;
    t.unitFib = G.unit;
    t.invFib = G.inv;
    t.compFib = G.comp;
    t.label = "T(" + G.label + ")";
    return t;
}

CotangentVB cotangentVB(const LinGroupoid& G) {
    std::size_t A = G.arrowDim, m = G.baseDim;
    CotangentVB c;
    c.agFrame = G.src.kernelBasis();
    std::size_t aDim = c.agFrame.cols();
    c.anchor = G.tgt * c.agFrame;

    Mat comp1 = G.comp.block(0, 0, A, A);
    Mat comp2 = G.comp.block(0, A, A, A);

    LinVBGroupoid& vb = c.vb;
    vb.base = G;
    vb.sideDim = aDim;
    vb.fiberDim = A;
    vb.srcFib = (comp2 * (c.agFrame - G.unit * c.anchor)).transpose();
    vb.tgtFib = (comp1 * c.agFrame).transpose();

    Mat UF = Mat::hcat(G.unit, c.agFrame);
    auto UFtInv = UF.transpose().inverse();
    if (!UFtInv)
        throw std::logic_error("cotangentVB: units and algebroid frame do not split T(1_m)G");
    vb.unitFib = *UFtInv * Mat::vcat(Mat::zero(m, aDim), Mat::identity(aDim));
    c.coreEmbed = *UFtInv * Mat::vcat(Mat::identity(m), c.anchor.transpose());
    vb.invFib = -G.inv.transpose();

    // composition from (Psi Phi)(Y o X) = Psi(Y) + Phi(X), solved on the
    // tangent-composable subspace
    Mat Wstar = Mat::hcat(vb.srcFib, -vb.tgtFib).kernelBasis();
    Mat Wt = composablePairBasis(G);
    Mat Msys = (G.comp * Wt).transpose();  // wt x A
    std::vector<Vec> images;
    for (std::size_t j = 0; j < Wstar.cols(); ++j) {
        Vec qp = Wstar.col(j);
        auto sol = matSolve(Msys, Wt.transpose() * qp);
        if (!sol.consistent || sol.kernel.cols() != 0)
            throw std::logic_error("cotangentVB: dual composition not uniquely determined");
        images.push_back(sol.particular);
    }
    Mat vals = images.empty() ? Mat(A, 0) : Mat::fromColumns(images);
    vb.compFib = Wstar.cols() == 0 ? Mat::zero(A, 2 * A) : extendByZero(Wstar, vals, 2 * A);
    vb.label = "T*(" + G.label + ")";
    return c;
}

FinVBGroupoid finiteRestriction(const LinVBGroupoid& om, std::size_t points) {
    if (om.base.family != "pair")
        throw std::invalid_argument("finiteRestriction: registered for pair-family bases only");
    FinVBGroupoid f;
    f.base = pairGroupoidFin(points);
    f.sideDims.assign(points, om.sideDim);
    f.fiberDims.assign(f.base.nArrows(), om.fiberDim);
    for (std::size_t g = 0; g < f.base.nArrows(); ++g) {
        f.srcLin.push_back(om.srcFib);
        f.tgtLin.push_back(om.tgtFib);
        f.invLin.push_back(om.invFib);
    }
    for (std::size_t m = 0; m < points; ++m) f.unitLin.push_back(om.unitFib);
    for (const auto& [pair, hg] : f.base.comp) f.compLin[pair] = om.compFib;
    return f;
}

Report validateLinDouble(const LinDouble& D) {
    Report r;
    r.suite = "lin-double";
    r.merge(validateLinGroupoid(D.vertical), "vertical");
    r.merge(validateLinGroupoid(D.horizontal), "horizontal");
    r.merge(validateLinGroupoid(D.sideH), "sideH");
    r.merge(validateLinGroupoid(D.sideV), "sideV");

    bool dims = D.vertical.arrowDim == D.totalDim && D.horizontal.arrowDim == D.totalDim &&
                D.vertical.baseDim == D.sideH.arrowDim &&
                D.horizontal.baseDim == D.sideV.arrowDim && D.sideH.baseDim == D.baseDim &&
                D.sideV.baseDim == D.baseDim;
    r.add("dims", dims);
    if (!dims) return r;

    const Mat &hs = D.horizontal.src, &ht = D.horizontal.tgt;
    const Mat &vs = D.vertical.src, &vt = D.vertical.tgt;
    r.add("corner-ss", D.sideV.src * hs == D.sideH.src * vs);
    r.add("corner-ts", D.sideV.tgt * hs == D.sideH.src * vt);
    r.add("corner-st", D.sideV.src * ht == D.sideH.tgt * vs);
    r.add("corner-tt", D.sideV.tgt * ht == D.sideH.tgt * vt);

    std::size_t S = D.totalDim;
    Mat Wv = composablePairBasis(D.vertical);
    Mat Wh = composablePairBasis(D.horizontal);
    Mat p1 = selector(2 * S, {{0, S}}), p2 = selector(2 * S, {{S, S}});

    auto pairImg = [&](const Mat& f, const Mat& W) {
        return Mat::vcat(f * p1 * W, f * p2 * W);
    };
    // source/target of one structure are morphisms of the other
    r.add("hsrc-vcomp", hs * D.vertical.comp * Wv == D.sideV.comp * pairImg(hs, Wv));
    r.add("htgt-vcomp", ht * D.vertical.comp * Wv == D.sideV.comp * pairImg(ht, Wv));
    r.add("vsrc-hcomp", vs * D.horizontal.comp * Wh == D.sideH.comp * pairImg(vs, Wh));
    r.add("vtgt-hcomp", vt * D.horizontal.comp * Wh == D.sideH.comp * pairImg(vt, Wh));

    r.add("hsrc-vunit", hs * D.vertical.unit == D.sideV.unit * D.sideH.src);
    r.add("htgt-vunit", ht * D.vertical.unit == D.sideV.unit * D.sideH.tgt);
    r.add("vsrc-hunit", vs * D.horizontal.unit == D.sideH.unit * D.sideV.src);
    r.add("vtgt-hunit", vt * D.horizontal.unit == D.sideH.unit * D.sideV.tgt);

    r.add("hsrc-vinv", hs * D.vertical.inv == D.sideV.inv * hs);
    r.add("htgt-vinv", ht * D.vertical.inv == D.sideV.inv * ht);
    r.add("vsrc-hinv", vs * D.horizontal.inv == D.sideH.inv * vs);
    r.add("vtgt-hinv", vt * D.horizontal.inv == D.sideH.inv * vt);

    // units of units agree (double identities)
    r.add("double-identity", D.vertical.unit * D.sideH.unit == D.horizontal.unit * D.sideV.unit);

    // unit bisections are morphisms of the opposite structures
    Mat WH = composablePairBasis(D.sideH);
    std::size_t dh = D.sideH.arrowDim;
    Mat q1 = selector(2 * dh, {{0, dh}}), q2 = selector(2 * dh, {{dh, dh}});
    r.add("vunit-morphism",
          D.vertical.unit * D.sideH.comp * WH ==
              D.horizontal.comp * Mat::vcat(D.vertical.unit * q1 * WH, D.vertical.unit * q2 * WH));
    Mat WV = composablePairBasis(D.sideV);
    std::size_t dv = D.sideV.arrowDim;
    Mat u1 = selector(2 * dv, {{0, dv}}), u2 = selector(2 * dv, {{dv, dv}});
    r.add("hunit-morphism",
          D.horizontal.unit * D.sideV.comp * WV ==
              D.vertical.comp * Mat::vcat(D.horizontal.unit * u1 * WV, D.horizontal.unit * u2 * WV));

    // interchange law on compatible quadruples (s1,s2,s3,s4)
    {
        Mat c1 = Mat::hcat(Mat::hcat(hs, -ht), Mat::zero(hs.rows(), 2 * S));
        Mat c2 = Mat::hcat(Mat::zero(hs.rows(), 2 * S), Mat::hcat(hs, -ht));
        Mat c3 = Mat::hcat(Mat::hcat(vs, Mat::zero(vs.rows(), S)), Mat::hcat(-vt, Mat::zero(vs.rows(), S)));
        Mat c4 = Mat::hcat(Mat::hcat(Mat::zero(vs.rows(), S), vs), Mat::hcat(Mat::zero(vs.rows(), S), -vt));
        Mat Q = Mat::vcat(Mat::vcat(c1, c2), Mat::vcat(c3, c4)).kernelBasis();
        auto sel4 = [&](std::size_t b) { return selector(4 * S, {{b * S, S}}); };
        Mat s1 = sel4(0) * Q, s2 = sel4(1) * Q, s3 = sel4(2) * Q, s4 = sel4(3) * Q;
        Mat lhs = D.vertical.comp *
                  Mat::vcat(D.horizontal.comp * Mat::vcat(s1, s2), D.horizontal.comp * Mat::vcat(s3, s4));
        Mat rhs = D.horizontal.comp *
                  Mat::vcat(D.vertical.comp * Mat::vcat(s1, s3), D.vertical.comp * Mat::vcat(s2, s4));
        r.add("interchange", lhs == rhs);
    }

    // double source map covers H x_M V
    std::size_t expected = D.sideH.arrowDim + D.sideV.arrowDim - D.baseDim;
    r.add("double-source-surjective", Mat::vcat(vs, hs).rank() == expected);
    return r;
}

LinDouble m4Double(std::size_t n) {
    LinDouble D;
    D.totalDim = 4 * n;
    D.baseDim = n;
    D.family = "m4";
    D.familyParam = n;
    // s = (a, b, c, d)
    LinGroupoid vert;
    vert.baseDim = 2 * n;
    vert.arrowDim = 4 * n;
    vert.src = selector(4 * n, {{2 * n, 2 * n}});
    vert.tgt = selector(4 * n, {{0, 2 * n}});
    vert.unit = Mat::vcat(Mat::identity(2 * n), Mat::identity(2 * n));
    vert.inv = selector(4 * n, {{2 * n, 2 * n}, {0, 2 * n}});
    vert.comp = selector(8 * n, {{0, 2 * n}, {6 * n, 2 * n}});
    vert.family = "pair";
    vert.label = "m4-vertical";
    D.vertical = vert;

    LinGroupoid horiz;
    horiz.baseDim = 2 * n;
    horiz.arrowDim = 4 * n;
    horiz.src = selector(4 * n, {{n, n}, {3 * n, n}});          // (b, d)
    horiz.tgt = selector(4 * n, {{0, n}, {2 * n, n}});          // (a, c)
    horiz.unit = selector(2 * n, {{0, n}, {0, n}, {n, n}, {n, n}});  // (v1,v1,v2,v2)
    horiz.inv = selector(4 * n, {{n, n}, {0, n}, {3 * n, n}, {2 * n, n}});
    horiz.comp = selector(8 * n, {{0, n}, {5 * n, n}, {2 * n, n}, {7 * n, n}});
    horiz.family = "pair";
    horiz.label = "m4-horizontal";
    D.horizontal = horiz;

    D.sideH = pairGroupoid(n);
    D.sideH.label = "m4-H";
    D.sideV = pairGroupoid(n);
    D.sideV.label = "m4-V";
    return D;
}

namespace {

// Fiberwise-addition groupoid of a vector bundle R^{base + fiber} -> R^base.
LinGroupoid additionGroupoid(std::size_t baseDim, std::size_t fiberDim) {
    LinGroupoid G;
    G.baseDim = baseDim;
    G.arrowDim = baseDim + fiberDim;
    G.src = selector(baseDim + fiberDim, {{0, baseDim}});
    G.tgt = G.src;
    G.unit = Mat::vcat(Mat::identity(baseDim), Mat::zero(fiberDim, baseDim));
    G.inv = blockDiag(Mat::identity(baseDim), -Mat::identity(fiberDim));
    // ((b, e), (b, f)) -> (b, e + f)
    Mat comp(baseDim + fiberDim, 2 * (baseDim + fiberDim));
    for (std::size_t i = 0; i < baseDim; ++i) comp.at(i, i) = Rat(1);
    for (std::size_t i = 0; i < fiberDim; ++i) {
        comp.at(baseDim + i, baseDim + i) = Rat(1);
        comp.at(baseDim + i, 2 * baseDim + fiberDim + i) = Rat(1);
    }
    G.comp = comp;
    G.family = "addition";
    return G;
}

} // namespace

LinDouble vbAsDouble(const LinVBGroupoid& om) {
    LinDouble D;
    std::size_t A = om.base.arrowDim, F = om.fiberDim;
    D.totalDim = A + F;
    D.baseDim = om.base.baseDim;
    D.vertical = totalGroupoid(om);                        // Omega over A-side
    D.horizontal = additionGroupoid(A, F);                 // Omega over G
    D.horizontal.label = om.label + "-fiberadd";
    D.sideH = additionGroupoid(om.base.baseDim, om.sideDim);  // A over M
    D.sideH.label = om.label + "-sideadd";
    D.sideV = om.base;                                     // G over M
    D.family = "vb(" + om.label + ")";
    return D;
}

LinCoreGroupoid coreOfDouble(const LinDouble& D, const Mat* preferredEmbed) {
    std::size_t S = D.totalDim, m = D.baseDim;
    Mat constraint = Mat::vcat(Mat::hcat(D.horizontal.src, -D.sideV.unit),
                               Mat::hcat(D.vertical.src, -D.sideH.unit));
    Mat K = constraint.kernelBasis();
    if (preferredEmbed) {
        if (preferredEmbed->cols() != K.cols() ||
            Mat::hcat(K, *preferredEmbed).rank() != K.cols())
            throw std::invalid_argument("coreOfDouble: preferred embedding has wrong span");
        K = *preferredEmbed;
    }
    LinCoreGroupoid C;
    C.embedS = K.block(0, 0, S, K.cols());
    C.embedM = K.block(S, 0, m, K.cols());
    std::size_t dC = K.cols();

    LinGroupoid& g = C.gpd;
    g.baseDim = m;
    g.arrowDim = dC;
    g.src = D.sideV.src * D.horizontal.src * C.embedS;
    g.tgt = D.sideV.tgt * D.horizontal.tgt * C.embedS;
    g.unit = coordsIn(K, Mat::vcat(D.vertical.unit * D.sideH.unit, Mat::identity(m)));
    g.family = "core";
    g.label = "core(" + D.family + ")";

    // inversion: c^{-1(H)} o_V tilde-1^H_{v^{-1}}, v = beta_H(c)
    Mat invS = D.vertical.comp *
               Mat::vcat(D.horizontal.inv * C.embedS,
                         D.horizontal.unit * D.sideV.inv * D.horizontal.tgt * C.embedS);
    g.inv = coordsIn(K, Mat::vcat(invS, D.sideV.src * D.horizontal.src * invS));
    // alternative: c^{-1(V)} o_H tilde-1^V_{h^{-1}}, h = beta_V(c)
    Mat invAltS = D.horizontal.comp *
                  Mat::vcat(D.vertical.inv * C.embedS,
                            D.vertical.unit * D.sideH.inv * D.vertical.tgt * C.embedS);
    C.invAlt = coordsIn(K, Mat::vcat(invAltS, D.sideV.src * D.horizontal.src * invAltS));

    // multiplication on the composable subspace, extended by zero
    Mat Wc = Mat::hcat(g.src, -g.tgt).kernelBasis();
    Mat P1 = selector(2 * dC, {{0, dC}}), P2 = selector(2 * dC, {{dC, dC}});
    Mat E1 = C.embedS * P1 * Wc, E2 = C.embedS * P2 * Wc;
    // (c' o_H 1^V_{h2}) o_V c, h2 = beta_V(c)
    Mat X1 = D.horizontal.comp *
             Mat::vcat(E1, D.vertical.unit * D.vertical.tgt * E2);
    Mat prodS = D.vertical.comp * Mat::vcat(X1, E2);
    Mat prodC = coordsIn(K, Mat::vcat(prodS, D.sideV.src * D.horizontal.src * prodS));
    g.comp = Wc.cols() == 0 ? Mat::zero(dC, 2 * dC) : extendByZero(Wc, prodC, 2 * dC);
    // (c' o_V 1^H_{v2}) o_H c, v2 = beta_H(c)
    Mat X1a = D.vertical.comp *
              Mat::vcat(E1, D.horizontal.unit * D.horizontal.tgt * E2);
    Mat prodSa = D.horizontal.comp * Mat::vcat(X1a, E2);
    Mat prodCa = coordsIn(K, Mat::vcat(prodSa, D.sideV.src * D.horizontal.src * prodSa));
    C.compAlt = Wc.cols() == 0 ? Mat::zero(dC, 2 * dC) : extendByZero(Wc, prodCa, 2 * dC);
    return C;
}

namespace {

LinVBGroupoid algebroidVB(const LinGroupoid& structure, const LinGroupoid& other,
                          const LinGroupoid& baseGpd, const LinGroupoid& otherSide,
                          const std::string& label) {
    // structure: the groupoid being differentiated (S over B1); other: the
    // prolonged structure (S over B2); baseGpd: B1 over M; otherSide: B2 over M.
    Mat F = structure.src.kernelBasis();           // fiber frame in S coords
    Mat FA = otherSide.src.kernelBasis();          // side frame in B2 coords
    LinVBGroupoid vb;
    vb.base = baseGpd;
    vb.fiberDim = F.cols();
    vb.sideDim = FA.cols();
    vb.srcFib = coordsIn(FA, other.src * F);
    vb.tgtFib = coordsIn(FA, other.tgt * F);
    vb.unitFib = coordsIn(F, other.unit * FA);
    vb.invFib = coordsIn(F, other.inv * F);
    Mat W = Mat::hcat(vb.srcFib, -vb.tgtFib).kernelBasis();
    Mat sel1 = selector(2 * vb.fiberDim, {{0, vb.fiberDim}});
    Mat sel2 = selector(2 * vb.fiberDim, {{vb.fiberDim, vb.fiberDim}});
    Mat images = coordsIn(F, other.comp * Mat::vcat(F * sel1 * W, F * sel2 * W));
    vb.compFib = W.cols() == 0 ? Mat::zero(vb.fiberDim, 2 * vb.fiberDim)
                               : extendByZero(W, images, 2 * vb.fiberDim);
    vb.label = label;
    return vb;
}

} // namespace

LinVBGroupoid verticalAlgebroidVB(const LinDouble& D) {
    return algebroidVB(D.vertical, D.horizontal, D.sideH, D.sideV, "A_V(" + D.family + ")");
}

LinVBGroupoid horizontalAlgebroidVB(const LinDouble& D) {
    return algebroidVB(D.horizontal, D.vertical, D.sideV, D.sideH, "A_H(" + D.family + ")");
}

LinVBGroupoid pradinesDualLin(const LinVBGroupoid& om) {
    std::size_t F = om.fiberDim;
    Mat FK = coreFrame(om);
    std::size_t k = FK.cols();
    Mat P = coordsIn(FK, Mat::identity(F) - om.unitFib * om.srcFib);

    LinVBGroupoid d;
    d.base = om.base;
    d.sideDim = k;
    d.fiberDim = F;
    Mat tg = om.compFib * Mat::vcat(Mat::zero(F, k), om.invFib * FK);
    d.srcFib = -tg.transpose();
    Mat ug = om.compFib * Mat::vcat(FK, Mat::zero(F, k));
    d.tgtFib = ug.transpose();
    d.unitFib = P.transpose();
    d.invFib = -om.invFib.transpose();

    Mat Wd = Mat::hcat(d.srcFib, -d.tgtFib).kernelBasis();
    Mat A = Mat::vcat(om.compFib, Mat::hcat(om.srcFib, -om.tgtFib));
    std::vector<Vec> images;
    for (std::size_t c = 0; c < Wd.cols(); ++c) {
        Vec psi = subvec(Wd.col(c), 0, F), phi = subvec(Wd.col(c), F, F);
        Vec img(F);
        for (std::size_t l = 0; l < F; ++l) {
            Vec rhs(F + om.sideDim, Rat(0));
            rhs[l] = Rat(1);
            auto sol = matSolve(A, rhs);
            if (!sol.consistent)
                throw std::logic_error("pradinesDualLin: decomposition solve inconsistent");
            img[l] = dot(psi, subvec(sol.particular, 0, F)) +
                     dot(phi, subvec(sol.particular, F, F));
            for (std::size_t kk = 0; kk < sol.kernel.cols(); ++kk) {
                Vec kv = sol.kernel.col(kk);
                if (!(dot(psi, subvec(kv, 0, F)) + dot(phi, subvec(kv, F, F))).isZero())
                    throw std::logic_error("pradinesDualLin: value depends on decomposition");
            }
        }
        images.push_back(img);
    }
    Mat vals = images.empty() ? Mat(F, 0) : Mat::fromColumns(images);
    d.compFib = Wd.cols() == 0 ? Mat::zero(F, 2 * F) : extendByZero(Wd, vals, 2 * F);
    d.label = om.label + "^*";
    return d;
}

Mat dualCoreEmbeddingLin(const LinVBGroupoid& om) {
    Mat FK = coreFrame(om);
    Mat P = coordsIn(FK, Mat::identity(om.fiberDim) - om.unitFib * om.srcFib);
    return (om.srcFib + coreDelta(om) * P).transpose();
}

namespace {

LinVBGroupoid reSide(const LinVBGroupoid& om, const Mat& sideIso) {
    auto inv = sideIso.inverse();
    if (!inv) throw std::invalid_argument("reSide: side change of coordinates not invertible");
    LinVBGroupoid r = om;
    r.srcFib = sideIso * om.srcFib;
    r.tgtFib = sideIso * om.tgtFib;
    r.unitFib = om.unitFib * *inv;
    return r;
}

} // namespace

CotangentDouble cotangentDouble(const LinDouble& D) {
    CotangentDouble c;
    c.vertFace = cotangentVB(D.vertical);
    c.horizFace = cotangentVB(D.horizontal);
    c.avsVB = verticalAlgebroidVB(D);
    c.ahsVB = horizontalAlgebroidVB(D);
    c.coreC = coreOfDouble(D);
    c.acFrameC = c.coreC.gpd.src.kernelBasis();
    c.acFrameS = c.coreC.embedS * c.acFrameC;

    LinVBGroupoid dualV = pradinesDualLin(c.avsVB);
    LinVBGroupoid dualH = pradinesDualLin(c.ahsVB);

    Mat FV = D.vertical.src.kernelBasis();
    Mat FH = D.horizontal.src.kernelBasis();
    Mat acToKV = coordsIn(FV * coreFrame(c.avsVB), c.acFrameS);
    Mat acToKH = coordsIn(FH * coreFrame(c.ahsVB), c.acFrameS);
    c.vSideVB = reSide(dualV, acToKV.transpose());
    c.hSideVB = reSide(dualH, acToKH.transpose());

    c.dbl.totalDim = 2 * D.totalDim;
    c.dbl.baseDim = D.baseDim + c.acFrameC.cols();
    c.dbl.vertical = totalGroupoid(c.vertFace.vb);
    c.dbl.horizontal = totalGroupoid(c.horizFace.vb);
    c.dbl.sideH = totalGroupoid(c.vSideVB);
    c.dbl.sideV = totalGroupoid(c.hSideVB);
    c.dbl.family = "cotangent(" + D.family + ")";
    c.dbl.familyParam = D.familyParam;
    return c;
}

Mat coreProjectionE(const LinDouble& D, const LinCoreGroupoid& C) {
    std::size_t S = D.totalDim;
    const Mat& hs = D.horizontal.src;
    const Mat& vs = D.vertical.src;
    Mat vcomp2 = D.vertical.comp.block(0, S, S, S);
    Mat hcomp2 = D.horizontal.comp.block(0, S, S, S);
    Mat termH = vcomp2 * D.horizontal.unit *
                (hs - D.sideV.unit * D.sideV.tgt * hs);
    Mat termV = hcomp2 * D.vertical.unit *
                (vs - D.sideH.unit * D.sideH.tgt * vs);
    Mat E = Mat::identity(S) - termH - termV;
    return coordsIn(C.embedS, E);
}

Vec coreEmbeddingSigma(const LinDouble& D, const LinCoreGroupoid& C, const Vec& sigma) {
    Mat E = coreProjectionE(D, C);
    if (sigma.size() != E.rows())
        throw std::invalid_argument("coreEmbeddingSigma: sigma not based at a core point");
    return E.transpose() * sigma;
}

namespace {

void requireMorphism(const LinGroupoid& G, const LinGroupoid& Gp, const Mat& phi,
                     const Mat& phiBase, const std::string& what) {
    if (Gp.src * phi != phiBase * G.src)
        throw std::invalid_argument("inferBaseMorphism: " + what + " fails src condition");
    if (Gp.tgt * phi != phiBase * G.tgt)
        throw std::invalid_argument("inferBaseMorphism: " + what + " fails tgt condition");
    if (phi * G.unit != Gp.unit * phiBase)
        throw std::invalid_argument("inferBaseMorphism: " + what + " fails unit condition");
    Mat W = composablePairBasis(G);
    std::size_t A = G.arrowDim;
    Mat p1 = selector(2 * A, {{0, A}}), p2 = selector(2 * A, {{A, A}});
    if (phi * G.comp * W != Gp.comp * Mat::vcat(phi * p1 * W, phi * p2 * W))
        throw std::invalid_argument("inferBaseMorphism: " + what + " fails comp condition");
}

} // namespace

DoubleMorphism inferBaseMorphism(const LinDouble& D, const LinDouble& Dp, const Mat& phi,
                                 const Mat& phiH, const Mat& phiV) {
    requireMorphism(D.vertical, Dp.vertical, phi, phiH, "(phi, phiH)");
    requireMorphism(D.horizontal, Dp.horizontal, phi, phiV, "(phi, phiV)");
    // phi(1^2_m) = 1^2_{phiM m}
    Mat U2 = D.vertical.unit * D.sideH.unit;
    Mat U2p = Dp.vertical.unit * Dp.sideH.unit;
    Mat phiM = coordsIn(U2p, phi * U2);
    return DoubleMorphism{phi, phiH, phiV, phiM};
}

Report validateDoubleMorphism(const LinDouble& D, const LinDouble& Dp, const DoubleMorphism& F) {
    Report r;
    r.suite = "double-morphism";
    auto morph = [&](const LinGroupoid& G, const LinGroupoid& Gp, const Mat& f, const Mat& fb,
                     const std::string& name) {
        bool ok = Gp.src * f == fb * G.src && Gp.tgt * f == fb * G.tgt &&
                  f * G.unit == Gp.unit * fb && f * G.inv == Gp.inv * f;
        Mat W = composablePairBasis(G);
        std::size_t A = G.arrowDim;
        Mat p1 = selector(2 * A, {{0, A}}), p2 = selector(2 * A, {{A, A}});
        ok = ok && f * G.comp * W == Gp.comp * Mat::vcat(f * p1 * W, f * p2 * W);
        r.add(name, ok);
    };
    morph(D.vertical, Dp.vertical, F.phi, F.phiH, "phi-vertical");
    morph(D.horizontal, Dp.horizontal, F.phi, F.phiV, "phi-horizontal");
    morph(D.sideH, Dp.sideH, F.phiH, F.phiM, "phiH");
    morph(D.sideV, Dp.sideV, F.phiV, F.phiM, "phiV");
    return r;
}

} // namespace dgd
