#include "dgd/mat.hpp"

#include <sstream>
#include <stdexcept>

namespace dgd {

static void checkSameSize(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("Vec: size mismatch");
}

Vec operator+(const Vec& a, const Vec& b) {
    checkSameSize(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    checkSameSize(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec operator*(const Rat& s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

Vec operator-(const Vec& a) { return Rat(-1) * a; }

Rat dot(const Vec& a, const Vec& b) {
    checkSameSize(a, b);
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool isZero(const Vec& a) {
    for (const auto& x : a)
        if (!x.isZero()) return false;
    return true;
}

Vec concat(const Vec& a, const Vec& b) {
    Vec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Vec subvec(const Vec& a, std::size_t begin, std::size_t len) {
    if (begin + len > a.size()) throw std::invalid_argument("subvec: out of range");
    return Vec(a.begin() + begin, a.begin() + begin + len);
}

Mat::Mat(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.assign(rows_ * cols_, Rat(0));
    std::size_t i = 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("Mat: ragged initializer");
        std::size_t j = 0;
        for (long v : r) at(i, j++) = Rat(v);
        ++i;
    }
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

Mat Mat::fromColumns(const std::vector<Vec>& cols) {
    if (cols.empty()) return Mat(0, 0);
    Mat m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows()) throw std::invalid_argument("fromColumns: ragged");
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

Mat Mat::fromRows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Mat(0, 0);
    Mat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw std::invalid_argument("fromRows: ragged");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::diag(const Vec& d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

Vec Mat::row(std::size_t i) const {
    Vec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

Vec Mat::col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat*: dimension mismatch");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (aik.isZero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

Vec Mat::operator*(const Vec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("Mat*Vec: dimension mismatch");
    Vec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(i, j).isZero()) r[i] += at(i, j) * v[j];
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat+: dimension mismatch");
    Mat r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const { return *this + o.scaled(Rat(-1)); }
Mat Mat::operator-() const { return scaled(Rat(-1)); }

Mat Mat::scaled(const Rat& s) const {
    Mat r = *this;
    for (auto& x : r.e_) x *= s;
    return r;
}

bool Mat::isZero() const {
    for (const auto& x : e_)
        if (!x.isZero()) return false;
    return true;
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    Mat m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

Mat Mat::vcat(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat: col mismatch");
    Mat m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

Mat Mat::block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
    if (i0 + r > rows_ || j0 + c > cols_) throw std::invalid_argument("block: out of range");
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
    return m;
}

namespace {

// Row-reduces M in place; returns pivot column of each pivot row.
std::vector<std::size_t> rref(Mat& M) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
        std::size_t p = r;
        while (p < M.rows() && M.at(p, c).isZero()) ++p;
        if (p == M.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M.at(p, j), M.at(r, j));
        Rat inv = M.at(r, c).inv();
        for (std::size_t j = c; j < M.cols(); ++j) M.at(r, j) *= inv;
        for (std::size_t i = 0; i < M.rows(); ++i) {
            if (i == r || M.at(i, c).isZero()) continue;
            Rat f = M.at(i, c);
            for (std::size_t j = c; j < M.cols(); ++j) M.at(i, j) -= f * M.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::size_t Mat::rank() const {
    Mat m = *this;
    return rref(m).size();
}

Mat Mat::kernelBasis() const {
    Mat m = *this;
    auto pivots = rref(m);
    std::vector<bool> isPivot(cols_, false);
    for (auto c : pivots) isPivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (isPivot[f]) continue;
        Vec v(cols_, Rat(0));
        v[f] = Rat(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
        basis.push_back(v);
    }
    if (basis.empty()) return Mat(cols_, 0);
    return Mat::fromColumns(basis);
}

std::optional<Mat> Mat::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    Mat aug = hcat(*this, identity(rows_));
    auto pivots = rref(aug);
    if (pivots.size() != rows_) return std::nullopt;
    for (auto c : pivots)
        if (c >= rows_) return std::nullopt;
    return aug.block(0, rows_, rows_, rows_);
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

SolveResult matSolve(const Mat& A, const Vec& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("matSolve: dimension mismatch");
    Mat aug = Mat::hcat(A, Mat::fromColumns({b}));
    auto pivots = rref(aug);
    SolveResult res;
    // Inconsistent iff a pivot lands in the RHS column.
    for (auto c : pivots)
        if (c == A.cols()) return res;
    res.consistent = true;
    res.particular.assign(A.cols(), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        res.particular[pivots[r]] = aug.at(r, A.cols());
    res.kernel = A.kernelBasis();
    return res;
}

std::optional<Mat> matSolveMatrix(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows()) throw std::invalid_argument("matSolveMatrix: dimension mismatch");
    std::vector<Vec> cols;
    cols.reserve(B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j) {
        auto r = matSolve(A, B.col(j));
        if (!r.consistent) return std::nullopt;
        cols.push_back(r.particular);
    }
    if (cols.empty()) return Mat(A.cols(), 0);
    return Mat::fromColumns(cols);
}


// Extends the columns of W to a basis of R^n (greedy over coordinate vectors).
Mat completeBasis(const Mat& W, std::size_t n) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < W.cols(); ++j) cols.push_back(W.col(j));
    for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
        Vec e(n, Rat(0));
        e[i] = Rat(1);
        cols.push_back(e);
        if (Mat::fromColumns(cols).rank() != cols.size()) cols.pop_back();
    }
    Mat T = Mat::fromColumns(cols);
    if (T.rows() != n || T.cols() != n || !T.inverse())
        throw std::logic_error("completeBasis: failed to complete");
    return T;
}

// Linear map given on the columns of `onBasis` (values in `values`), extended
// by zero on a complement.
Mat extendByZero(const Mat& onBasis, const Mat& values, std::size_t domainDim) {
    Mat T = completeBasis(onBasis, domainDim);
    Mat vals(values.rows(), domainDim);
    for (std::size_t j = 0; j < onBasis.cols(); ++j)
        for (std::size_t i = 0; i < values.rows(); ++i) vals.at(i, j) = values.at(i, j);
    auto Tinv = T.inverse();
    return vals * *Tinv;
}

Mat coordsIn(const Mat& frame, const Mat& vectors) {
    auto c = matSolveMatrix(frame, vectors);
    if (!c) throw std::logic_error("coordsIn: vectors not in the span of frame");
    return *c;
}

std::optional<Mat> leftInverse(const Mat& A) {
    // L A = I  <=>  A^T L^T = I.
    auto lt = matSolveMatrix(A.transpose(), Mat::identity(A.cols()));
    if (!lt) return std::nullopt;
    if (A.rank() != A.cols()) return std::nullopt;
    return lt->transpose();
}

} // namespace dgd
