#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sav/rational.hpp"

namespace sav {

using Pt = std::vector<int64_t>;

int64_t sup_norm(const Pt& p);
Pt pt_add(const Pt& a, const Pt& b);
Pt pt_sub(const Pt& a, const Pt& b);
Pt pt_neg(const Pt& a);

/// Finitely supported signed function on Z^d with exact rational values.
/// Zero entries are never stored; iteration order is deterministic (lex).
class SparseMeasure {
  public:
    explicit SparseMeasure(int d, std::string provenance = "")
        : d_(d), provenance_(std::move(provenance)) {
        if (d < 1) throw std::invalid_argument("SparseMeasure: d >= 1 required");
    }

    int dim() const { return d_; }
    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    size_t support_size() const { return v_.size(); }
    const std::map<Pt, Rat>& entries() const { return v_; }

    Rat at(const Pt& p) const {
        auto it = v_.find(p);
        return it == v_.end() ? Rat(0) : it->second;
    }
    void set(const Pt& p, const Rat& x) {
        check_point(p);
        if (sgn(x) == 0)
            v_.erase(p);
        else
            v_[p] = x;
    }
    void add(const Pt& p, const Rat& x) {
        check_point(p);
        auto it = v_.find(p);
        if (it == v_.end()) {
            if (sgn(x) != 0) v_.emplace(p, x);
        } else {
            it->second += x;
            if (sgn(it->second) == 0) v_.erase(it);
        }
    }

    SparseMeasure reflect() const;  // a~(x) = a(-x)
    SparseMeasure scaled(const Rat& c) const;
    SparseMeasure operator+(const SparseMeasure& o) const;
    SparseMeasure operator-(const SparseMeasure& o) const;
    bool operator==(const SparseMeasure& o) const { return d_ == o.d_ && v_ == o.v_; }

  private:
    void check_point(const Pt& p) const {
        if ((int)p.size() != d_) throw std::invalid_argument("SparseMeasure: dimension mismatch");
    }

    int d_;
    std::map<Pt, Rat> v_;
    std::string provenance_;
};

struct MeasureStats {
    Rat l1;
    Rat l2_sq;        // squared l2 norm, exact
    Rat linf;
    Rat linf_punctured;  // sup over Z^d \ {0}
    size_t support_size = 0;
    int64_t support_radius = 0;  // max sup-norm over the support
};

/// (a*b)(x) = sum_y a(y) b(x-y), exact. Throws if the product of support sizes
/// exceeds the budget (no silent truncation).
SparseMeasure convolve(const SparseMeasure& a, const SparseMeasure& b,
                       size_t pair_budget = 200'000'000);

MeasureStats measure_stats(const SparseMeasure& a);

/// JSON-lines serialization, one entry per line: {"pt":[..],"num":..,"den":..}
void write_jsonl(std::ostream& os, const SparseMeasure& a);
SparseMeasure read_jsonl(std::istream& is, int d);

}  // namespace sav
