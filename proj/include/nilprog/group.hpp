#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nilprog/errors.hpp"
#include "nilprog/lyndon.hpp"
#include "nilprog/rational.hpp"
#include "nilprog/tensor.hpp"

namespace nilprog {

enum class GroupModel { FreeNilpotent, Unitriangular };

// Position in the lower central series; Infinity for the identity.
struct Weight {
    int value = 0;
    bool infinite = false;

    static Weight infinity() { return {0, true}; }
    static Weight of(int v) { return {v, false}; }

    bool at_least(int k) const { return infinite || value >= k; }
    bool operator==(const Weight& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

inline std::string to_string(const Weight& w) {
    return w.infinite ? "inf" : std::to_string(w.value);
}

class NilGroupSpec;
using SpecPtr = std::shared_ptr<const NilGroupSpec>;

// Presentation of a nilpotent group in one of two exact models:
//  - FreeNilpotent(rank, class): logarithmic coordinates over a Lyndon-word
//    Hall basis, group law through the truncated free tensor algebra;
//  - Unitriangular(m): rational unitriangular m x m matrices, class m-1.
class NilGroupSpec {
public:
    static constexpr int kMaxRank = 4;
    static constexpr int kMaxClass = 6;
    static constexpr std::size_t kDefaultBasisCap = 64;

    static SpecPtr free_nilpotent(int rank, int nil_class,
                                  std::size_t basis_cap = kDefaultBasisCap) {
        if (rank < 1 || rank > kMaxRank)
            throw std::invalid_argument("free_nilpotent: rank out of range [1,4]");
        if (nil_class < 1 || nil_class > kMaxClass)
            throw std::invalid_argument("free_nilpotent: class out of range [1,6]");
        if (lyndon_words(rank, nil_class).size() > basis_cap)
            throw Error("free_nilpotent: basis size exceeds cap of " +
                        std::to_string(basis_cap));
        auto spec = std::shared_ptr<NilGroupSpec>(new NilGroupSpec());
        spec->model_ = GroupModel::FreeNilpotent;
        spec->rank_ = rank;
        spec->class_ = nil_class;
        spec->table_ = std::make_unique<WordTable>(rank, nil_class);
        spec->basis_ = std::make_unique<LyndonBasis>(*spec->table_, rank, nil_class);
        spec->build_bracket_table();
        return spec;
    }

    static SpecPtr unitriangular(int m) {
        if (m < 2 || m > kMaxClass + 1)
            throw std::invalid_argument("unitriangular: dimension out of range [2,7]");
        auto spec = std::shared_ptr<NilGroupSpec>(new NilGroupSpec());
        spec->model_ = GroupModel::Unitriangular;
        spec->dim_ = m;
        spec->class_ = m - 1;
        return spec;
    }

    GroupModel model() const { return model_; }
    int rank() const { return rank_; }
    int nil_class() const { return class_; }
    int matrix_dim() const { return dim_; }

    const WordTable& word_table() const { return *table_; }
    const LyndonBasis& lyndon() const { return *basis_; }

    // Number of coordinates (= dimension of the graded Lie algebra).
    std::size_t lie_dim() const {
        if (model_ == GroupModel::FreeNilpotent) return basis_->dim();
        return static_cast<std::size_t>(dim_) * (dim_ - 1) / 2;
    }

    int coord_weight(std::size_t k) const {
        if (model_ == GroupModel::FreeNilpotent) return basis_->weights[k];
        auto [i, j] = matrix_position(k);
        return j - i;
    }

    std::string coord_label(std::size_t k) const {
        if (model_ == GroupModel::FreeNilpotent) return basis_->labels[k];
        auto [i, j] = matrix_position(k);
        return "E" + std::to_string(i + 1) + std::to_string(j + 1);
    }

    // Strictly upper positions ordered by superdiagonal offset, so the
    // coordinate weights are non-decreasing.
    std::pair<int, int> matrix_position(std::size_t k) const {
        std::size_t c = 0;
        for (int off = 1; off < dim_; ++off)
            for (int i = 0; i + off < dim_; ++i)
                if (c++ == k) return {i, i + off};
        throw std::out_of_range("matrix_position");
    }

    using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

    // Structure constants [b_i, b_j] for basis pairs i < j with compatible
    // weights (free model only).
    const std::map<std::pair<std::size_t, std::size_t>, SparseVec>& bracket_table() const {
        return brackets_;
    }

    bool compatible(const NilGroupSpec& o) const {
        return model_ == o.model_ && rank_ == o.rank_ && class_ == o.class_ && dim_ == o.dim_;
    }

private:
    NilGroupSpec() = default;

    void build_bracket_table() {
        std::size_t n = basis_->dim();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (basis_->weights[i] + basis_->weights[j] > class_) continue;
                TensorPoly c = commutator_poly(basis_->expansions[i], basis_->expansions[j]);
                auto coords = lie_coordinates(*table_, *basis_, c);
                SparseVec sv;
                for (std::size_t k = 0; k < coords.size(); ++k)
                    if (coords[k] != 0) sv.emplace_back(k, coords[k]);
                brackets_[{i, j}] = std::move(sv);
            }
        }
    }

    GroupModel model_ = GroupModel::FreeNilpotent;
    int rank_ = 0;
    int class_ = 0;
    int dim_ = 0;
    std::unique_ptr<WordTable> table_;
    std::unique_ptr<LyndonBasis> basis_;
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> brackets_;
};

inline SpecPtr hall_basis(int rank, int nil_class,
                          std::size_t basis_cap = NilGroupSpec::kDefaultBasisCap) {
    return NilGroupSpec::free_nilpotent(rank, nil_class, basis_cap);
}

namespace detail {

using RatMatrix = std::vector<Rational>;  // row-major, dense

inline RatMatrix mat_identity(int m) {
    RatMatrix a(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i) * m + i] = 1;
    return a;
}

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b, int m) {
    RatMatrix r(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            const Rational& aik = a[static_cast<std::size_t>(i) * m + k];
            if (aik == 0) continue;
            for (int j = 0; j < m; ++j) {
                const Rational& bkj = b[static_cast<std::size_t>(k) * m + j];
                if (bkj != 0) r[static_cast<std::size_t>(i) * m + j] += aik * bkj;
            }
        }
    return r;
}

inline RatMatrix mat_scale(RatMatrix a, const Rational& q) {
    for (auto& x : a) x *= q;
    return a;
}

inline RatMatrix mat_add(RatMatrix a, const RatMatrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

// log(I + N) for nilpotent N hidden in unitriangular M.
inline RatMatrix mat_log(const RatMatrix& mat, int m) {
    RatMatrix n = mat;
    for (int i = 0; i < m; ++i) n[static_cast<std::size_t>(i) * m + i] -= 1;
    RatMatrix r(static_cast<std::size_t>(m) * m);
    RatMatrix term = mat_identity(m);
    for (int k = 1; k < m; ++k) {
        term = mat_mul(term, n, m);
        r = mat_add(std::move(r), mat_scale(term, Rational(k % 2 == 1 ? 1 : -1, k)));
    }
    return r;
}

inline RatMatrix mat_exp(const RatMatrix& x, int m) {
    RatMatrix r = mat_identity(m);
    RatMatrix term = mat_identity(m);
    for (int k = 1; k < m; ++k) {
        term = mat_mul(term, x, m);
        term = mat_scale(std::move(term), Rational(1, k));
        r = mat_add(std::move(r), term);
    }
    return r;
}

// Inverse of unitriangular M = I + N via the finite geometric series.
inline RatMatrix mat_inverse(const RatMatrix& mat, int m) {
    RatMatrix n = mat;
    for (int i = 0; i < m; ++i) n[static_cast<std::size_t>(i) * m + i] -= 1;
    RatMatrix r = mat_identity(m);
    RatMatrix term = mat_identity(m);
    for (int k = 1; k < m; ++k) {
        term = mat_mul(term, n, m);
        r = mat_add(std::move(r), mat_scale(term, Rational(k % 2 == 0 ? 1 : -1)));
    }
    return r;
}

}  // namespace detail

// An exact group element. Free model: the grouplike exponential in the
// truncated tensor algebra (canonical form, so equality is coefficientwise).
// Matrix model: the unitriangular matrix itself.
class GroupElement {
public:
    static GroupElement identity(SpecPtr spec) {
        if (spec->model() == GroupModel::FreeNilpotent) {
            TensorPoly one = TensorPoly::one(spec->word_table());
            return GroupElement(std::move(spec), std::move(one));
        }
        detail::RatMatrix mat = detail::mat_identity(spec->matrix_dim());
        return GroupElement(std::move(spec), std::move(mat));
    }

    // Model-specific coordinates: logarithmic Hall coordinates (free model) or
    // strictly-upper matrix entries in row-major order (matrix model).
    static GroupElement from_coords(SpecPtr spec, const std::vector<Rational>& coords) {
        if (coords.size() != spec->lie_dim())
            throw std::invalid_argument("from_coords: wrong coordinate count");
        if (spec->model() == GroupModel::FreeNilpotent) return from_lie_coords(spec, coords);
        int m = spec->matrix_dim();
        auto mat = detail::mat_identity(m);
        for (std::size_t k = 0; k < coords.size(); ++k) {
            auto [i, j] = spec->matrix_position(k);
            mat[static_cast<std::size_t>(i) * m + j] = coords[k];
        }
        return GroupElement(std::move(spec), std::move(mat));
    }

    // Logarithmic coordinates in the graded Lie algebra (both models).
    static GroupElement from_lie_coords(SpecPtr spec, const std::vector<Rational>& coords) {
        if (coords.size() != spec->lie_dim())
            throw std::invalid_argument("from_lie_coords: wrong coordinate count");
        if (spec->model() == GroupModel::FreeNilpotent) {
            TensorPoly x(spec->word_table());
            for (std::size_t k = 0; k < coords.size(); ++k) {
                if (coords[k] == 0) continue;
                TensorPoly t = spec->lyndon().expansions[k];
                t *= coords[k];
                x += t;
            }
            return GroupElement(std::move(spec), exp_poly(x));
        }
        int m = spec->matrix_dim();
        detail::RatMatrix x(static_cast<std::size_t>(m) * m);
        for (std::size_t k = 0; k < coords.size(); ++k) {
            auto [i, j] = spec->matrix_position(k);
            x[static_cast<std::size_t>(i) * m + j] = coords[k];
        }
        return GroupElement(std::move(spec), detail::mat_exp(x, m));
    }

    static GroupElement generator(SpecPtr spec, std::size_t k) {
        std::vector<Rational> coords(spec->lie_dim());
        coords.at(k) = 1;
        return from_lie_coords(std::move(spec), coords);
    }

    // I + q*E_{ij} (matrix model), 1-based indices.
    static GroupElement elementary(SpecPtr spec, int i, int j, const Rational& q) {
        if (spec->model() != GroupModel::Unitriangular)
            throw std::invalid_argument("elementary: matrix model only");
        int m = spec->matrix_dim();
        if (i < 1 || j <= i || j > m) throw std::invalid_argument("elementary: bad position");
        auto mat = detail::mat_identity(m);
        mat[static_cast<std::size_t>(i - 1) * m + (j - 1)] = q;
        return GroupElement(std::move(spec), std::move(mat));
    }

    const SpecPtr& spec() const { return spec_; }
    GroupModel model() const { return spec_->model(); }

    const TensorPoly& poly() const { return std::get<TensorPoly>(payload_); }
    const detail::RatMatrix& matrix() const { return std::get<detail::RatMatrix>(payload_); }

    bool is_identity() const {
        if (model() == GroupModel::FreeNilpotent) return poly().is_one();
        return matrix() == detail::mat_identity(spec_->matrix_dim());
    }

    std::vector<Rational> coords() const {
        if (model() == GroupModel::FreeNilpotent) return lie_coords();
        int m = spec_->matrix_dim();
        std::vector<Rational> out;
        out.reserve(spec_->lie_dim());
        for (std::size_t k = 0; k < spec_->lie_dim(); ++k) {
            auto [i, j] = spec_->matrix_position(k);
            out.push_back(matrix()[static_cast<std::size_t>(i) * m + j]);
        }
        return out;
    }

    std::vector<Rational> lie_coords() const {
        if (model() == GroupModel::FreeNilpotent) {
            return lie_coordinates(spec_->word_table(), spec_->lyndon(), log_poly(poly()));
        }
        int m = spec_->matrix_dim();
        auto x = detail::mat_log(matrix(), m);
        std::vector<Rational> out;
        out.reserve(spec_->lie_dim());
        for (std::size_t k = 0; k < spec_->lie_dim(); ++k) {
            auto [i, j] = spec_->matrix_position(k);
            out.push_back(x[static_cast<std::size_t>(i) * m + j]);
        }
        return out;
    }

    bool operator==(const GroupElement& o) const {
        return spec_->compatible(*o.spec_) && payload_ == o.payload_;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

    GroupElement(SpecPtr spec, TensorPoly poly)
        : spec_(std::move(spec)), payload_(std::move(poly)) {}
    GroupElement(SpecPtr spec, detail::RatMatrix mat)
        : spec_(std::move(spec)), payload_(std::move(mat)) {}

private:
    SpecPtr spec_;
    std::variant<detail::RatMatrix, TensorPoly> payload_;
};

inline void require_same_spec(const GroupElement& a, const GroupElement& b) {
    if (!a.spec()->compatible(*b.spec())) throw SpecMismatch("elements from different specs");
}

inline GroupElement mul(const GroupElement& a, const GroupElement& b) {
    require_same_spec(a, b);
    if (a.model() == GroupModel::FreeNilpotent)
        return GroupElement(a.spec(), a.poly() * b.poly());
    return GroupElement(a.spec(),
                        detail::mat_mul(a.matrix(), b.matrix(), a.spec()->matrix_dim()));
}

inline GroupElement inverse(const GroupElement& a) {
    if (a.model() == GroupModel::FreeNilpotent) return GroupElement(a.spec(), a.poly().antipode());
    return GroupElement(a.spec(), detail::mat_inverse(a.matrix(), a.spec()->matrix_dim()));
}

// Rational power exp(q * log a); exact because both models are divisible.
inline GroupElement power_rational(const GroupElement& a, const Rational& q) {
    if (a.model() == GroupModel::FreeNilpotent) {
        TensorPoly x = log_poly(a.poly());
        x *= q;
        return GroupElement(a.spec(), exp_poly(x));
    }
    int m = a.spec()->matrix_dim();
    return GroupElement(a.spec(), detail::mat_exp(detail::mat_scale(detail::mat_log(a.matrix(), m), q), m));
}

inline GroupElement power(const GroupElement& a, const Integer& n) {
    if (n == 0) return GroupElement::identity(a.spec());
    if (n == 1) return a;
    Integer k = n < 0 ? Integer(-n) : n;
    if (k > 16) return power_rational(a, Rational(n));
    GroupElement base = n < 0 ? inverse(a) : a;
    GroupElement acc = GroupElement::identity(a.spec());
    GroupElement sq = base;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = mul(acc, sq);
        k >>= 1;
        if (k > 0) sq = mul(sq, sq);
    }
    return acc;
}

inline GroupElement power(const GroupElement& a, long n) { return power(a, Integer(n)); }

inline GroupElement commutator(const GroupElement& a, const GroupElement& b) {
    require_same_spec(a, b);
    return mul(mul(a, b), mul(inverse(a), inverse(b)));
}

inline Weight weight(const GroupElement& a) {
    if (a.model() == GroupModel::FreeNilpotent) {
        int d = a.poly().min_positive_degree();
        return d == 0 ? Weight::infinity() : Weight::of(d);
    }
    int m = a.spec()->matrix_dim();
    const auto& mat = a.matrix();
    for (int off = 1; off < m; ++off)
        for (int i = 0; i + off < m; ++i)
            if (mat[static_cast<std::size_t>(i) * m + i + off] != 0) return Weight::of(off);
    return Weight::infinity();
}

inline GroupElement root(const GroupElement& a, long m) {
    if (m == 0) throw std::invalid_argument("root: m = 0");
    if (m < 0) throw std::invalid_argument("root: m must be positive");
    return power_rational(a, Rational(1, m));
}

// The fixed isomorphism between the free rank-2 class-2 model and
// Unitriangular(3): x1 -> E12, x2 -> E23, [x1,x2] -> E13, with the
// exponential-coordinate correction on the (1,3) entry.
inline GroupElement heisenberg_to_matrix(const GroupElement& a, SpecPtr matrix_spec) {
    if (a.model() != GroupModel::FreeNilpotent || a.spec()->rank() != 2 ||
        a.spec()->nil_class() != 2)
        throw std::invalid_argument("heisenberg_to_matrix: source must be free rank-2 class-2");
    if (matrix_spec->model() != GroupModel::Unitriangular || matrix_spec->matrix_dim() != 3)
        throw std::invalid_argument("heisenberg_to_matrix: target must be Unitriangular(3)");
    // (x1, x2, [x1,x2]) matches (E12, E23, E13) position for position
    return GroupElement::from_lie_coords(std::move(matrix_spec), a.lie_coords());
}

inline GroupElement matrix_to_heisenberg(const GroupElement& a, SpecPtr free_spec) {
    if (a.model() != GroupModel::Unitriangular || a.spec()->matrix_dim() != 3)
        throw std::invalid_argument("matrix_to_heisenberg: source must be Unitriangular(3)");
    if (free_spec->model() != GroupModel::FreeNilpotent || free_spec->rank() != 2 ||
        free_spec->nil_class() != 2)
        throw std::invalid_argument("matrix_to_heisenberg: target must be free rank-2 class-2");
    return GroupElement::from_lie_coords(std::move(free_spec), a.lie_coords());
}

// Lie bracket on logarithmic coordinate vectors.
inline std::vector<Rational> lie_bracket(const NilGroupSpec& spec, const std::vector<Rational>& u,
                                         const std::vector<Rational>& v) {
    std::vector<Rational> out(spec.lie_dim());
    if (spec.model() == GroupModel::FreeNilpotent) {
        for (const auto& [pair, sv] : spec.bracket_table()) {
            auto [i, j] = pair;
            Rational c = u[i] * v[j] - u[j] * v[i];
            if (c == 0) continue;
            for (const auto& [k, q] : sv) out[k] += c * q;
        }
        return out;
    }
    int m = spec.matrix_dim();
    detail::RatMatrix x(static_cast<std::size_t>(m) * m), y(static_cast<std::size_t>(m) * m);
    for (std::size_t k = 0; k < u.size(); ++k) {
        auto [i, j] = spec.matrix_position(k);
        x[static_cast<std::size_t>(i) * m + j] = u[k];
        y[static_cast<std::size_t>(i) * m + j] = v[k];
    }
    auto z = detail::mat_add(detail::mat_mul(x, y, m),
                             detail::mat_scale(detail::mat_mul(y, x, m), Rational(-1)));
    for (std::size_t k = 0; k < out.size(); ++k) {
        auto [i, j] = spec.matrix_position(k);
        out[k] = z[static_cast<std::size_t>(i) * m + j];
    }
    return out;
}

}  // namespace nilprog
