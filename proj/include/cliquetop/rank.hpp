#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cliquetop {

// Exact rank accumulators for sparse integer matrices, columns streamed in.
// A column either reduces to zero against the basis or is installed with a
// fresh pivot row, in which case the rank grows by one. The pivot of a column
// is its largest row index, so row numbering controls reduction locality; the
// filtration engine numbers rows by creation order, which keeps reductions
// short on clique complexes.

// ---------------------------------------------------------------------------
// Prime field, p < 2^32 so products fit in unsigned 64-bit arithmetic.
class PrimeColumnReducer {
public:
    struct Entry {
        std::uint32_t row;
        std::uint64_t val;  // in [1, p)
    };
    using Column = std::vector<Entry>;

    explicit PrimeColumnReducer(std::uint64_t p) : p_(p) {
        if (p < 2 || p > 0xffffffffull) throw std::invalid_argument("PrimeColumnReducer: need 2 <= p < 2^32");
    }

    void ensure_rows(std::size_t rows) {
        if (rows > basis_.size()) basis_.resize(rows);
    }

    // Destructively reduces c (entries sorted ascending by row, values
    // nonzero mod p); returns true when the column was independent.
    bool add_column(Column&& c) {
        while (!c.empty()) {
            const std::uint32_t piv = c.back().row;
            if (piv >= basis_.size()) basis_.resize(piv + 1);
            Column& b = basis_[piv];
            if (b.empty()) {
                normalize(c);
                basis_[piv] = std::move(c);
                ++rank_;
                return true;
            }
            eliminate(c, b);
        }
        return false;
    }

    std::size_t rank() const { return rank_; }

    std::uint64_t p() const { return p_; }

    void clear() {
        basis_.clear();
        rank_ = 0;
    }

private:
    // Scale column so the pivot coefficient is 1.
    void normalize(Column& c) {
        const std::uint64_t inv = inverse(c.back().val);
        if (inv == 1) return;
        for (Entry& e : c) e.val = mulmod(e.val, inv);
    }

    // c -= c_piv * b, where b is pivot-normalized and shares c's pivot row.
    void eliminate(Column& c, const Column& b) {
        const std::uint64_t factor = p_ - c.back().val;  // -c_piv mod p
        scratch_.clear();
        scratch_.reserve(c.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < c.size() || j < b.size()) {
            if (j == b.size() || (i < c.size() && c[i].row < b[j].row)) {
                scratch_.push_back(c[i++]);
            } else if (i == c.size() || b[j].row < c[i].row) {
                scratch_.push_back({b[j].row, mulmod(b[j].val, factor)});
                ++j;
            } else {
                std::uint64_t v = addmod(c[i].val, mulmod(b[j].val, factor));
                if (v != 0) scratch_.push_back({c[i].row, v});
                ++i;
                ++j;
            }
        }
        c.swap(scratch_);
    }

    std::uint64_t addmod(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }

    std::uint64_t inverse(std::uint64_t a) const {
        // Fermat: p is prime.
        std::uint64_t result = 1, base = a % p_, e = p_ - 2;
        while (e) {
            if (e & 1) result = mulmod(result, base);
            base = mulmod(base, base);
            e >>= 1;
        }
        return result;
    }

    std::uint64_t p_;
    std::size_t rank_ = 0;
    std::vector<Column> basis_;
    Column scratch_;
};

// ---------------------------------------------------------------------------
// Rank over the rationals via fraction-free integer elimination: columns are
// cross-multiplied and divided by their content, so all arithmetic stays in
// arbitrary-precision integers.
class ExactColumnReducer {
public:
    using Int = boost::multiprecision::cpp_int;
    struct Entry {
        std::uint32_t row;
        Int val;  // nonzero
    };
    using Column = std::vector<Entry>;

    bool add_column(Column&& c) {
        strip_zeros(c);
        while (!c.empty()) {
            const std::uint32_t piv = c.back().row;
            if (piv >= basis_.size()) basis_.resize(piv + 1);
            Column& b = basis_[piv];
            if (b.empty()) {
                reduce_content(c);
                basis_[piv] = std::move(c);
                ++rank_;
                return true;
            }
            eliminate(c, b);
        }
        return false;
    }

    std::size_t rank() const { return rank_; }

    void clear() {
        basis_.clear();
        rank_ = 0;
    }

private:
    static void strip_zeros(Column& c) {
        Column out;
        out.reserve(c.size());
        for (Entry& e : c)
            if (e.val != 0) out.push_back(std::move(e));
        c.swap(out);
    }

    // c := (b_piv/g) * c - (c_piv/g) * b with g = gcd(b_piv, c_piv), then
    // divide by the resulting content.
    void eliminate(Column& c, const Column& b) {
        const Int& cp = c.back().val;
        const Int& bp = b.back().val;
        Int g = boost::multiprecision::gcd(cp, bp);
        Int mc = bp / g;
        Int mb = cp / g;
        Column out;
        out.reserve(c.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < c.size() || j < b.size()) {
            if (j == b.size() || (i < c.size() && c[i].row < b[j].row)) {
                out.push_back({c[i].row, mc * c[i].val});
                ++i;
            } else if (i == c.size() || b[j].row < c[i].row) {
                out.push_back({b[j].row, -mb * b[j].val});
                ++j;
            } else {
                Int v = mc * c[i].val - mb * b[j].val;
                if (v != 0) out.push_back({c[i].row, std::move(v)});
                ++i;
                ++j;
            }
        }
        reduce_content(out);
        c.swap(out);
    }

    static void reduce_content(Column& c) {
        if (c.empty()) return;
        Int g = 0;
        for (const Entry& e : c) {
            g = boost::multiprecision::gcd(g, e.val);
            if (g == 1) break;
        }
        if (c.back().val < 0) g = -g;  // keep pivots positive
        if (g != 1)
            for (Entry& e : c) e.val /= g;
    }

    std::size_t rank_ = 0;
    std::vector<Column> basis_;
};

}  // namespace cliquetop
