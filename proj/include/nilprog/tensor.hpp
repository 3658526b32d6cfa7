#pragma once

#include <cstdint>
#include <vector>

#include "nilprog/errors.hpp"
#include "nilprog/rational.hpp"

namespace nilprog {

// Indexing of the words of length <= cap over `rank` letters: the basis of the
// truncated free associative algebra. Words of one length are ordered
// lexicographically; the big-endian base-`rank` value preserves that order.
class WordTable {
public:
    WordTable(int rank, int cap) : rank_(rank), cap_(cap) {
        pow_.resize(static_cast<std::size_t>(cap) + 1);
        pow_[0] = 1;
        for (int d = 1; d <= cap; ++d) pow_[d] = pow_[d - 1] * static_cast<std::size_t>(rank);
        offset_.resize(static_cast<std::size_t>(cap) + 2);
        offset_[0] = 0;
        for (int d = 0; d <= cap; ++d) offset_[d + 1] = offset_[d] + pow_[d];
    }

    int rank() const { return rank_; }
    int cap() const { return cap_; }
    std::size_t size() const { return offset_[cap_ + 1]; }
    std::size_t offset(int len) const { return offset_[len]; }
    std::size_t count(int len) const { return pow_[len]; }
    std::size_t pow(int len) const { return pow_[len]; }
    std::size_t index(int len, std::size_t val) const { return offset_[len] + val; }

    int length_of(std::size_t idx) const {
        int len = 0;
        while (idx >= offset_[len + 1]) ++len;
        return len;
    }
    std::size_t value_of(std::size_t idx) const { return idx - offset_[length_of(idx)]; }

    std::vector<int> letters_of(std::size_t idx) const {
        int len = length_of(idx);
        std::size_t val = idx - offset_[len];
        std::vector<int> out(len);
        for (int i = len - 1; i >= 0; --i) {
            out[i] = static_cast<int>(val % rank_);
            val /= rank_;
        }
        return out;
    }

    std::size_t index_of_letters(const std::vector<int>& letters) const {
        std::size_t val = 0;
        for (int l : letters) val = val * rank_ + static_cast<std::size_t>(l);
        return index(static_cast<int>(letters.size()), val);
    }

    std::size_t reversed(std::size_t idx) const {
        int len = length_of(idx);
        std::size_t val = idx - offset_[len];
        std::size_t rev = 0;
        for (int i = 0; i < len; ++i) {
            rev = rev * rank_ + val % rank_;
            val /= rank_;
        }
        return offset_[len] + rev;
    }

    bool operator==(const WordTable& o) const { return rank_ == o.rank_ && cap_ == o.cap_; }

private:
    int rank_;
    int cap_;
    std::vector<std::size_t> pow_;
    std::vector<std::size_t> offset_;
};

// Dense truncated polynomial in the free associative algebra.
class TensorPoly {
public:
    explicit TensorPoly(const WordTable& table) : table_(&table), c_(table.size()) {}

    static TensorPoly one(const WordTable& table) {
        TensorPoly p(table);
        p.c_[0] = 1;
        return p;
    }

    const WordTable& table() const { return *table_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    Rational& operator[](std::size_t i) { return c_[i]; }
    std::size_t size() const { return c_.size(); }

    bool is_zero() const {
        for (const auto& q : c_)
            if (q != 0) return false;
        return true;
    }
    bool is_one() const {
        if (c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    TensorPoly& operator+=(const TensorPoly& o) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    TensorPoly& operator-=(const TensorPoly& o) {
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    TensorPoly& operator*=(const Rational& q) {
        for (auto& x : c_) x *= q;
        return *this;
    }

    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
    friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
    friend TensorPoly operator*(TensorPoly a, const Rational& q) { return a *= q; }

    friend TensorPoly operator*(const TensorPoly& a, const TensorPoly& b) {
        const WordTable& t = *a.table_;
        TensorPoly r(t);
        int cap = t.cap();
        for (int d1 = 0; d1 <= cap; ++d1) {
            std::size_t off1 = t.offset(d1);
            for (std::size_t v1 = 0; v1 < t.count(d1); ++v1) {
                const Rational& ca = a.c_[off1 + v1];
                if (ca == 0) continue;
                for (int d2 = 0; d2 + d1 <= cap; ++d2) {
                    std::size_t off2 = t.offset(d2);
                    std::size_t dst = t.offset(d1 + d2) + v1 * t.pow(d2);
                    for (std::size_t v2 = 0; v2 < t.count(d2); ++v2) {
                        const Rational& cb = b.c_[off2 + v2];
                        if (cb == 0) continue;
                        r.c_[dst + v2] += ca * cb;
                    }
                }
            }
        }
        return r;
    }

    bool operator==(const TensorPoly& o) const { return c_ == o.c_; }
    bool operator!=(const TensorPoly& o) const { return !(*this == o); }

    // Smallest degree >= 1 carrying a nonzero coefficient; 0 if none.
    int min_positive_degree() const {
        for (int d = 1; d <= table_->cap(); ++d) {
            std::size_t off = table_->offset(d);
            for (std::size_t v = 0; v < table_->count(d); ++v)
                if (c_[off + v] != 0) return d;
        }
        return 0;
    }

    TensorPoly homogeneous_part(int d) const {
        TensorPoly r(*table_);
        std::size_t off = table_->offset(d);
        for (std::size_t v = 0; v < table_->count(d); ++v) r.c_[off + v] = c_[off + v];
        return r;
    }

    // Antipode: reverse each word, sign (-1)^length. Inverts grouplike elements.
    TensorPoly antipode() const {
        TensorPoly r(*table_);
        for (int d = 0; d <= table_->cap(); ++d) {
            std::size_t off = table_->offset(d);
            int sign = (d % 2 == 0) ? 1 : -1;
            for (std::size_t v = 0; v < table_->count(d); ++v) {
                std::size_t i = off + v;
                if (c_[i] == 0) continue;
                r.c_[table_->reversed(i)] = sign > 0 ? c_[i] : -c_[i];
            }
        }
        return r;
    }

private:
    const WordTable* table_;
    std::vector<Rational> c_;
};

inline TensorPoly commutator_poly(const TensorPoly& a, const TensorPoly& b) {
    return a * b - b * a;
}

// exp of a polynomial with zero constant term, truncated at the table cap.
inline TensorPoly exp_poly(const TensorPoly& x) {
    if (x[0] != 0) throw Error("exp_poly: nonzero constant term");
    TensorPoly r = TensorPoly::one(x.table());
    TensorPoly term = TensorPoly::one(x.table());
    for (int k = 1; k <= x.table().cap(); ++k) {
        term = term * x;
        term *= Rational(1, k);
        if (term.is_zero()) break;
        r += term;
    }
    return r;
}

// log of a polynomial with constant term 1, truncated at the table cap.
inline TensorPoly log_poly(const TensorPoly& p) {
    if (p[0] != 1) throw Error("log_poly: constant term is not 1");
    TensorPoly n = p;
    n[0] = 0;
    TensorPoly r(p.table());
    TensorPoly term = TensorPoly::one(p.table());
    for (int k = 1; k <= p.table().cap(); ++k) {
        term = term * n;
        if (term.is_zero()) break;
        TensorPoly t = term;
        t *= Rational(k % 2 == 1 ? 1 : -1, k);
        r += t;
    }
    return r;
}

}  // namespace nilprog
