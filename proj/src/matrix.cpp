#include "coarse/matrix.hpp"

#include <cmath>

namespace coarse {

MatrixOverRing::MatrixOverRing(int n, std::vector<RingElement> entries) {
    if (n < 1 || n > 4)
        throw Error(Err::INVALID_SPEC, "matrix dimension must be 1..4");
    if ((int)entries.size() != n * n)
        throw Error(Err::INVALID_SPEC, "entry count does not match dimension");
    n_ = n;
    field_ = entries[0].field();
    for (const auto& e : entries)
        if (e.field() != field_)
            throw Error(Err::DOMAIN_MISMATCH, "matrix entries over mixed fields");
    a_ = std::move(entries);
    det_ = determinant(n_, a_);
    if (det_.is_zero()) throw Error(Err::SINGULAR_MATRIX, "determinant is zero");

    // Adjugate / det.
    inv_.resize(n_ * n_);
    if (n_ == 1) {
        inv_[0] = a_[0].inverse();
    } else {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                std::vector<RingElement> minor;
                minor.reserve((n_ - 1) * (n_ - 1));
                for (int r = 0; r < n_; ++r) {
                    if (r == i) continue;
                    for (int c = 0; c < n_; ++c) {
                        if (c == j) continue;
                        minor.push_back(a_[r * n_ + c]);
                    }
                }
                RingElement cof = determinant(n_ - 1, minor);
                if ((i + j) % 2 == 1) cof = -cof;
                inv_[j * n_ + i] = cof / det_;  // transpose of cofactors
            }
    }
}

RingElement MatrixOverRing::determinant(int n, const std::vector<RingElement>& m) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    RingElement det = RingElement::from_rat(m[0].field(), Rat(0));
    for (int c = 0; c < n; ++c) {
        std::vector<RingElement> minor;
        minor.reserve((n - 1) * (n - 1));
        for (int r = 1; r < n; ++r)
            for (int k = 0; k < n; ++k)
                if (k != c) minor.push_back(m[r * n + k]);
        RingElement term = m[c] * determinant(n - 1, minor);
        det = (c % 2 == 0) ? det + term : det - term;
    }
    return det;
}

MatrixOverRing MatrixOverRing::identity(int n, int field) {
    std::vector<RingElement> e(n * n, RingElement::from_rat(field, Rat(0)));
    for (int i = 0; i < n; ++i) e[i * n + i] = RingElement::from_rat(field, Rat(1));
    return MatrixOverRing(n, std::move(e));
}

MatrixOverRing MatrixOverRing::inverse() const {
    MatrixOverRing out;
    out.n_ = n_;
    out.field_ = field_;
    out.a_ = inv_;
    out.inv_ = a_;
    out.det_ = det_.inverse();
    return out;
}

MatrixOverRing operator*(const MatrixOverRing& a, const MatrixOverRing& b) {
    if (a.n_ != b.n_) throw Error(Err::DOMAIN_MISMATCH, "matrix size mismatch");
    int n = a.n_;
    std::vector<RingElement> out(n * n, RingElement::from_rat(a.field_, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RingElement s = RingElement::from_rat(a.field_, Rat(0));
            for (int k = 0; k < n; ++k) s = s + a.at(i, k) * b.at(k, j);
            out[i * n + j] = s;
        }
    return MatrixOverRing(n, std::move(out));
}

bool operator==(const MatrixOverRing& a, const MatrixOverRing& b) {
    if (a.n_ != b.n_) return false;
    for (size_t i = 0; i < a.a_.size(); ++i)
        if (!(a.a_[i] == b.a_[i])) return false;
    return true;
}

bool MatrixOverRing::is_identity() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (i == j && !at(i, j).is_one()) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

bool MatrixOverRing::is_unipotent_upper() const {
    for (int i = 0; i < n_; ++i) {
        if (!at(i, i).is_one()) return false;
        for (int j = 0; j < i; ++j)
            if (!at(i, j).is_zero()) return false;
    }
    return true;
}

bool MatrixOverRing::is_diagonal() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && !at(i, j).is_zero()) return false;
    return true;
}

std::string MatrixOverRing::str() const {
    std::string out = "[";
    for (int i = 0; i < n_; ++i) {
        if (i) out += "; ";
        for (int j = 0; j < n_; ++j) {
            if (j) out += ", ";
            out += at(i, j).str();
        }
    }
    return out + "]";
}


long long length_gl(const Norm& norm, const MatrixOverRing& g) {
    if (!norm.non_archimedean())
        throw Error(Err::DOMAIN_MISMATCH,
                    "length_gl in exponent units needs a discrete norm; "
                    "use arch_length_gl for evaluation norms");
    long long best = 0;  // clamp at 0: gamma(1) = 1 on the diagonal of identity
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            NormValue d = norm(g.at(i, j));
            NormValue u = norm(g.inv_at(i, j));
            if (d.is_exponent()) best = std::max(best, d.exp());
            if (u.is_exponent()) best = std::max(best, u.exp());
        }
    return best;
}

Rat LengthFunction::operator()(const MatrixOverRing& g) const {
    Rat out(0);
    for (const auto& part : parts) out += part.weight * Rat(length_gl(part.norm, g));
    return out;
}

namespace {

double op_norm_2(const std::vector<std::vector<double>>& m, double tol) {
    int n = (int)m.size();
    // Power iteration on m^T m.
    std::vector<double> v(n, 1.0 / std::sqrt((double)n));
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        std::vector<double> mv(n, 0.0), w(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mv[i] += m[i][j] * v[j];
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) w[j] += m[i][j] * mv[i];
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (double& x : w) x /= norm;
        double next = norm;
        if (it > 2 && std::abs(next - lambda) <= tol * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
        v = std::move(w);
    }
    return std::sqrt(lambda);
}

std::vector<std::vector<double>> to_doubles(const MatrixOverRing& g, bool inverse,
                                            const Norm* eval_norm) {
    int n = g.n();
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const RingElement& e = inverse ? g.inv_at(i, j) : g.at(i, j);
            Rat v;
            if (eval_norm) {
                v = e.num().eval(eval_norm->eval_point(), eval_norm->var()) /
                    e.den().eval(eval_norm->eval_point(), eval_norm->var());
            } else {
                v = e.num().constant_value() / e.den().constant_value();
            }
            out[i][j] = v.to_double();
        }
    return out;
}

} // namespace

ArchLength arch_length_gl(const MatrixOverRing& g, double tol) {
    double a = op_norm_2(to_doubles(g, false, nullptr), tol);
    double b = op_norm_2(to_doubles(g, true, nullptr), tol);
    return {std::log(std::max(a, b)), tol};
}

ArchLength arch_length_gl(const Norm& eval_norm, const MatrixOverRing& g, double tol) {
    if (eval_norm.kind() != Norm::Kind::Eval)
        throw Error(Err::DOMAIN_MISMATCH, "archimedean length needs an evaluation norm");
    double a = op_norm_2(to_doubles(g, false, &eval_norm), tol);
    double b = op_norm_2(to_doubles(g, true, &eval_norm), tol);
    return {std::log(std::max(a, b)), tol};
}

MatrixOverRing dilation(const RingElement& theta, const MatrixOverRing& u) {
    if (!u.is_unipotent_upper())
        throw Error(Err::NOT_UNIPOTENT, "dilation applies to unipotent upper-triangular matrices");
    if (theta.is_zero()) throw Error(Err::INVALID_SPEC, "dilation by zero");
    int n = u.n();
    std::vector<RingElement> out;
    out.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j > i)
                out.push_back(theta.pow(j - i) * u.at(i, j));
            else
                out.push_back(u.at(i, j));
        }
    return MatrixOverRing(n, std::move(out));
}

long long unipotent_level(const MatrixOverRing& u, const RingElement& theta, const Norm& norm) {
    if (!u.is_unipotent_upper())
        throw Error(Err::NOT_UNIPOTENT, "level applies to unipotent upper-triangular matrices");
    NormValue th = norm(theta);
    if (!th.is_exponent() || th.exp() <= 0)
        throw Error(Err::THETA_NOT_EXPANDING, "gamma(theta) must exceed 1");
    long long e_theta = th.exp();
    long long k = 0;
    auto consider = [&](const RingElement& entry, int i, int j) {
        NormValue v = norm(entry);
        if (!v.is_exponent() || v.exp() <= 0) return;
        long long gap = (long long)(j - i) * e_theta;
        long long need = (v.exp() + gap - 1) / gap;  // ceil
        k = std::max(k, need);
    };
    for (int i = 0; i < u.n(); ++i)
        for (int j = i + 1; j < u.n(); ++j) {
            consider(u.at(i, j), i, j);
            consider(u.inv_at(i, j), i, j);
        }
    return k;
}

long long diagonal_length(const Norm& norm, const RingElement& uniformizer,
                          const std::vector<long long>& exponents) {
    NormValue v = norm(uniformizer);
    if (!v.is_exponent() || v.exp() == 0)
        throw Error(Err::INVALID_SPEC, "uniformizer must have nonzero exponent");
    long long unit = std::llabs(v.exp());
    long long best = 0;
    for (long long k : exponents) best = std::max(best, std::llabs(k));
    return best * unit;
}

} // namespace coarse
