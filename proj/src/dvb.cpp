#include "dgd/dvb.hpp"

#include <stdexcept>

namespace dgd {

namespace {

void checkDims(const SplitDVB& E, const Vec& a, const Vec& b, const Vec& k) {
    if (a.size() != E.dimH || b.size() != E.dimV || k.size() != E.dimCore)
        throw std::invalid_argument("DVBElement: component dimensions do not match bundle");
}

Vec basis(std::size_t n, std::size_t i) {
    Vec v(n, Rat(0));
    v[i] = Rat(1);
    return v;
}

} // namespace

DVBElement makeElement(const SplitDVB& E, Vec a, Vec b, Vec k) {
    checkDims(E, a, b, k);
    return DVBElement{E, std::move(a), std::move(b), std::move(k)};
}

DVBElement zeroElement(const SplitDVB& E) {
    return DVBElement{E, Vec(E.dimH, Rat(0)), Vec(E.dimV, Rat(0)), Vec(E.dimCore, Rat(0))};
}

DVBElement addVertical(const DVBElement& e1, const DVBElement& e2) {
    if (!e1.owner.sameShape(e2.owner))
        throw std::invalid_argument("addVertical: different bundles");
    if (e1.a != e2.a) throw std::invalid_argument("addVertical: mismatched side components");
    return DVBElement{e1.owner, e1.a, e1.b + e2.b, e1.k + e2.k};
}

DVBElement addHorizontal(const DVBElement& e1, const DVBElement& e2) {
    if (!e1.owner.sameShape(e2.owner))
        throw std::invalid_argument("addHorizontal: different bundles");
    if (e1.b != e2.b) throw std::invalid_argument("addHorizontal: mismatched side components");
    return DVBElement{e1.owner, e1.a + e2.a, e1.b, e1.k + e2.k};
}

DVBElement scaleVertical(const Rat& t, const DVBElement& e) {
    return DVBElement{e.owner, e.a, t * e.b, t * e.k};
}

DVBElement scaleHorizontal(const Rat& t, const DVBElement& e) {
    return DVBElement{e.owner, t * e.a, e.b, t * e.k};
}

SplitDVB dualVertical(const SplitDVB& E) {
    return SplitDVB{E.dimH, E.dimCore, E.dimV, E.label.empty() ? "" : E.label + "^*V"};
}

SplitDVB dualHorizontal(const SplitDVB& E) {
    return SplitDVB{E.dimCore, E.dimV, E.dimH, E.label.empty() ? "" : E.label + "^*H"};
}

Rat pairDualV(const DualVElement& phi, const DVBElement& xi) {
    if (!phi.primal.sameShape(xi.owner)) throw std::invalid_argument("pairDualV: wrong bundle");
    if (phi.a != xi.a) throw std::invalid_argument("pairDualV: base side mismatch");
    return dot(phi.beta, xi.b) + dot(phi.kappa, xi.k);
}

Rat pairDualH(const DualHElement& psi, const DVBElement& xi) {
    if (!psi.primal.sameShape(xi.owner)) throw std::invalid_argument("pairDualH: wrong bundle");
    if (psi.b != xi.b) throw std::invalid_argument("pairDualH: base side mismatch");
    return dot(psi.alpha, xi.a) + dot(psi.kappa, xi.k);
}

DVBElement asElement(const DualVElement& phi) {
    return makeElement(dualVertical(phi.primal), phi.a, phi.kappa, phi.beta);
}

DVBElement asElement(const DualHElement& psi) {
    return makeElement(dualHorizontal(psi.primal), psi.kappa, psi.b, psi.alpha);
}

Vec unfamiliarProjection(const DualVElement& phi) { return phi.kappa; }

Rat pairDualsWithXi(const DualVElement& phi, const DualHElement& psi, const Vec& coreChoice) {
    if (!phi.primal.sameShape(psi.primal))
        throw std::invalid_argument("pairDuals: duals of different bundles");
    if (phi.kappa != psi.kappa) throw std::invalid_argument("pairDuals: kappa mismatch");
    DVBElement xi = makeElement(phi.primal, phi.a, psi.b, coreChoice);
    return pairDualH(psi, xi) - pairDualV(phi, xi);
}

Rat pairDualsClosedForm(const DualVElement& phi, const DualHElement& psi) {
    if (phi.kappa != psi.kappa) throw std::invalid_argument("pairDuals: kappa mismatch");
    return dot(psi.alpha, phi.a) - dot(phi.beta, psi.b);
}

Rat pairDuals(const DualVElement& phi, const DualHElement& psi) {
    Rat v = pairDualsWithXi(phi, psi, Vec(phi.primal.dimCore, Rat(0)));
    if (v != pairDualsClosedForm(phi, psi))
        throw std::logic_error("pairDuals: split closed form disagrees with duals pairing");
    return v;
}

Mat dualsPairingMatrix(const SplitDVB& E, const Vec& kappa) {
    std::size_t r = E.dimH + E.dimV, c = E.dimV + E.dimH;
    Mat M(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        DualVElement phi{E, Vec(E.dimH, Rat(0)), Vec(E.dimV, Rat(0)), kappa};
        if (i < E.dimH)
            phi.a = basis(E.dimH, i);
        else
            phi.beta = basis(E.dimV, i - E.dimH);
        for (std::size_t j = 0; j < c; ++j) {
            DualHElement psi{E, Vec(E.dimH, Rat(0)), Vec(E.dimV, Rat(0)), kappa};
            if (j < E.dimV)
                psi.b = basis(E.dimV, j);
            else
                psi.alpha = basis(E.dimH, j - E.dimV);
            M.at(i, j) = pairDualsWithXi(phi, psi, Vec(E.dimCore, Rat(0)));
        }
    }
    return M;
}

Rat evalPairing(const DVBPairingData& P, const DVBElement& d, const DVBElement& xi) {
    if (d.a != xi.a) throw std::invalid_argument("evalPairing: shared-side mismatch");
    Rat v(0);
    v += dot(d.b, P.sideCore * xi.k);
    v += dot(d.k, P.coreSide * xi.b);
    v += dot(d.b, P.sideSide * xi.b);
    v += dot(d.k, P.coreCore * xi.k);
    return v;
}

InducedIso inducedIso(const DVBPairingData& P) {
    InducedIso out;
    if (P.D.dimH != P.E.dimH) throw std::invalid_argument("inducedIso: shared sides differ");

    // (i): D^V x L pairing nondegenerate (square, full rank).
    if (P.sideCore.rows() != P.D.dimV || P.sideCore.cols() != P.E.dimCore ||
        P.D.dimV != P.E.dimCore || P.sideCore.rank() != P.D.dimV) {
        out.failedCondition = "i";
        Mat ker = P.sideCore.transpose().kernelBasis();
        if (ker.cols() > 0) out.witness = ker.col(0);
        return out;
    }
    // (ii): K x E^V pairing nondegenerate.
    if (P.coreSide.rows() != P.D.dimCore || P.coreSide.cols() != P.E.dimV ||
        P.D.dimCore != P.E.dimV || P.coreSide.rank() != P.D.dimCore) {
        out.failedCondition = "ii";
        Mat ker = P.coreSide.transpose().kernelBasis();
        if (ker.cols() > 0) out.witness = ker.col(0);
        return out;
    }
    // (iii): cores orthogonal.
    if (!P.coreCore.isZero()) {
        out.failedCondition = "iii";
        for (std::size_t i = 0; i < P.coreCore.rows() && out.witness.empty(); ++i)
            if (!isZero(P.coreCore.row(i))) out.witness = P.coreCore.row(i);
        return out;
    }
    // (iv): biadditivity forces the constant side-side block to vanish
    // (a nonzero value doubles under simultaneous addition).
    if (!P.sideSide.isZero()) {
        out.failedCondition = "iv";
        for (std::size_t i = 0; i < P.sideSide.rows() && out.witness.empty(); ++i)
            if (!isZero(P.sideSide.row(i))) out.witness = P.sideSide.row(i);
        return out;
    }
    // (v): scalar compatibility holds for constant-coefficient data.
    out.ok = true;
    out.sideA = Mat::identity(P.D.dimH);
    out.sideV = P.sideCore.transpose();
    out.core = P.coreSide.transpose();
    return out;
}

DoubleDualIso doubleDualIso(const SplitDVB& E) {
    // Pairing of D = E^{*V} and E2 = E^{*H} over the shared side K*,
    // assembled by evaluating the duals pairing on basis elements.
    DVBPairingData P;
    P.D = SplitDVB{E.dimCore, E.dimH, E.dimV};  // role view of E^{*V} over K*
    P.E = dualHorizontal(E);                    // (K*, E^V; (E^H)*)
    P.sideCore = Mat(E.dimH, E.dimH);
    P.coreSide = Mat(E.dimV, E.dimV);
    P.sideSide = Mat(E.dimH, E.dimV);
    P.coreCore = Mat(E.dimV, E.dimH);
    Vec k0(E.dimCore, Rat(0));
    auto phiOf = [&](const Vec& a, const Vec& beta) {
        return DualVElement{E, a, beta, k0};
    };
    auto psiOf = [&](const Vec& alpha, const Vec& b) {
        return DualHElement{E, alpha, b, k0};
    };
    Vec zH(E.dimH, Rat(0)), zV(E.dimV, Rat(0));
    for (std::size_t i = 0; i < E.dimH; ++i)
        for (std::size_t j = 0; j < E.dimH; ++j)
            P.sideCore.at(i, j) = pairDuals(phiOf(basis(E.dimH, i), zV), psiOf(basis(E.dimH, j), zV));
    for (std::size_t i = 0; i < E.dimV; ++i)
        for (std::size_t j = 0; j < E.dimV; ++j)
            P.coreSide.at(i, j) = pairDuals(phiOf(zH, basis(E.dimV, i)), psiOf(zH, basis(E.dimV, j)));
    for (std::size_t i = 0; i < E.dimH; ++i)
        for (std::size_t j = 0; j < E.dimV; ++j)
            P.sideSide.at(i, j) = pairDuals(phiOf(basis(E.dimH, i), zV), psiOf(zH, basis(E.dimV, j)));
    for (std::size_t i = 0; i < E.dimV; ++i)
        for (std::size_t j = 0; j < E.dimH; ++j)
            P.coreCore.at(i, j) = pairDuals(phiOf(zH, basis(E.dimV, i)), psiOf(basis(E.dimH, j), zV));

    InducedIso iso = inducedIso(P);
    if (!iso.ok) throw std::logic_error("doubleDualIso: duals pairing failed condition " + iso.failedCondition);
    return DoubleDualIso{iso.sideV, Mat::identity(E.dimCore), iso.core};
}

DualVElement doubleDualApply(const SplitDVB& E, const DualVElement& phi) {
    DoubleDualIso iso = doubleDualIso(E);
    SplitDVB E2 = dualHorizontal(E);
    // Image in (E2)^{*V}: base side = kappa in K*, covector data over E2's
    // fiber (b in E^V, core alpha in (E^H)*).
    return DualVElement{E2, phi.kappa, iso.core * phi.beta, iso.sideH * phi.a};
}

TangentModel tangentModel(std::size_t m, std::size_t k) {
    TangentModel T;
    T.baseDim = m;
    T.fiberDim = k;
    T.TA = SplitDVB{k, m, k, "TA"};
    T.TAstar = SplitDVB{k, m, k, "TA*"};
    T.TstarA = dualVertical(T.TA);
    T.TsolA = dualHorizontal(T.TA);
    return T;
}

Rat tangentPairing(const TangentModel& T, const DVBElement& X, const DVBElement& xi) {
    if (!X.owner.sameShape(T.TAstar) || !xi.owner.sameShape(T.TA))
        throw std::invalid_argument("tangentPairing: wrong spaces");
    if (X.b != xi.b) throw std::invalid_argument("tangentPairing: mismatched velocities");
    return dot(X.k, xi.a) + dot(X.a, xi.k);
}

DualVElement tangentR(const TangentModel& T, const DVBElement& F) {
    if (!F.owner.sameShape(dualVertical(T.TAstar)))
        throw std::invalid_argument("tangentR: expected element of T*(A*)");
    std::size_t m = T.baseDim, k = T.fiberDim;
    const Vec& phi = F.a;
    // Unknowns u = (aOut | betaOut | kappaOut). For each probe (xdot, phidot,
    // adot): <F, X> + <betaOut, xdot> + <kappaOut, adot> = <phidot, aOut> + <phi, adot>.
    std::size_t nu = k + m + k;
    std::vector<Vec> rows;
    Vec rhs;
    auto probe = [&](const Vec& xdot, const Vec& phidot, const Vec& adot) {
        DualVElement Fd{T.TAstar, phi, F.k, F.b};
        DVBElement X = makeElement(T.TAstar, phi, xdot, phidot);
        Rat lhsConst = pairDualV(Fd, X);
        Vec row(nu, Rat(0));
        for (std::size_t j = 0; j < k; ++j) row[j] = -phidot[j];             // aOut
        for (std::size_t j = 0; j < m; ++j) row[k + j] = xdot[j];            // betaOut
        for (std::size_t j = 0; j < k; ++j) row[k + m + j] = adot[j];        // kappaOut
        rows.push_back(row);
        rhs.push_back(dot(phi, adot) - lhsConst);
    };
    Vec zm(m, Rat(0)), zk(k, Rat(0));
    for (std::size_t i = 0; i < m; ++i) probe(basis(m, i), zk, zk);
    for (std::size_t j = 0; j < k; ++j) probe(zm, basis(k, j), zk);
    for (std::size_t l = 0; l < k; ++l) probe(zm, zk, basis(k, l));
    auto sol = matSolve(Mat::fromRows(rows), rhs);
    if (!sol.consistent || sol.kernel.cols() != 0)
        throw std::logic_error("tangentR: defining relation not uniquely solvable");
    return DualVElement{T.TA, subvec(sol.particular, 0, k), subvec(sol.particular, k, m),
                        subvec(sol.particular, k + m, k)};
}

DualHElement tangentI(const TangentModel& T, const DVBElement& X) {
    if (!X.owner.sameShape(T.TAstar)) throw std::invalid_argument("tangentI: expected T(A*)");
    std::size_t m = T.baseDim, k = T.fiberDim;
    // <I(X), xi> = <<X, xi>> for xi = (a, X.b, adot): solve (alpha, kappa).
    std::size_t nu = 2 * k;
    std::vector<Vec> rows;
    Vec rhs;
    auto probe = [&](const Vec& a, const Vec& adot) {
        DVBElement xi = makeElement(T.TA, a, X.b, adot);
        Vec row(nu, Rat(0));
        for (std::size_t j = 0; j < k; ++j) row[j] = a[j];
        for (std::size_t j = 0; j < k; ++j) row[k + j] = adot[j];
        rows.push_back(row);
        rhs.push_back(tangentPairing(T, X, xi));
    };
    Vec zk(k, Rat(0));
    for (std::size_t i = 0; i < k; ++i) probe(basis(k, i), zk);
    for (std::size_t i = 0; i < k; ++i) probe(zk, basis(k, i));
    auto sol = matSolve(Mat::fromRows(rows), rhs);
    if (!sol.consistent || sol.kernel.cols() != 0)
        throw std::logic_error("tangentI: defining relation not uniquely solvable");
    return DualHElement{T.TA, subvec(sol.particular, 0, k), X.b, subvec(sol.particular, k, k)};
}

DualHElement tangentRinvDual(const TangentModel& T, const DVBElement& X) {
    if (!X.owner.sameShape(T.TAstar))
        throw std::invalid_argument("tangentRinvDual: expected T(A*)");
    std::size_t m = T.baseDim, k = T.fiberDim;
    const Vec& phi = X.a;
    SplitDVB TstarAstar = dualVertical(T.TAstar);

    // Matrix of R on fiber coordinates (aComp | p) over fixed phi = 0 plus the
    // phi-block, assembled columnwise; R is linear so this is exact.
    std::size_t n = k + k + m;  // (phi | aComp | p)
    Mat Rmat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, Rat(0));
        e[j] = Rat(1);
        DVBElement F = makeElement(TstarAstar, subvec(e, 0, k), subvec(e, k, k), subvec(e, 2 * k, m));
        DualVElement img = tangentR(T, F);
        Vec out = concat(img.a, concat(img.kappa, img.beta));  // (a | kappaA* | betaT*M)
        for (std::size_t i = 0; i < n; ++i) Rmat.at(i, j) = out[i];
    }
    auto Rinv = Rmat.inverse();
    if (!Rinv) throw std::logic_error("tangentRinvDual: R is not invertible");

    // <Psi, zeta> = <X, R^{-1}(zeta)> over the A*-side phi; solve Psi blocks.
    auto pairXwith = [&](const Vec& a, const Vec& p) {
        Vec zeta = concat(a, concat(phi, p));
        Vec f = *Rinv * zeta;  // (phi' | aComp | p') of T*(A*)
        DualVElement Fd{T.TAstar, subvec(f, 0, k), subvec(f, 2 * k, m), subvec(f, k, k)};
        return pairDualV(Fd, X);
    };
    Vec zk(k, Rat(0)), zm(m, Rat(0));
    Rat off = pairXwith(zk, zm);
    if (!off.isZero()) throw std::logic_error("tangentRinvDual: pairing has affine offset");
    Vec alpha(k), kappa(m);
    for (std::size_t i = 0; i < k; ++i) alpha[i] = pairXwith(basis(k, i), zm);
    for (std::size_t j = 0; j < m; ++j) kappa[j] = pairXwith(zk, basis(m, j));
    return DualHElement{T.TstarA, alpha, phi, kappa};
}

} // namespace dgd
