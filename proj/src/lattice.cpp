#include "sav/lattice.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace sav {

int64_t sup_norm(const Pt& p) {
    int64_t m = 0;
    for (int64_t c : p) m = std::max(m, c < 0 ? -c : c);
    return m;
}

Pt pt_add(const Pt& a, const Pt& b) {
    Pt r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Pt pt_sub(const Pt& a, const Pt& b) {
    Pt r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Pt pt_neg(const Pt& a) {
    Pt r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

SparseMeasure SparseMeasure::reflect() const {
    SparseMeasure r(d_, provenance_);
    for (const auto& [p, x] : v_) r.v_.emplace(pt_neg(p), x);
    return r;
}

SparseMeasure SparseMeasure::scaled(const Rat& c) const {
    SparseMeasure r(d_, provenance_);
    if (sgn(c) == 0) return r;
    for (const auto& [p, x] : v_) r.v_.emplace(p, x * c);
    return r;
}

SparseMeasure SparseMeasure::operator+(const SparseMeasure& o) const {
    if (d_ != o.d_) throw std::invalid_argument("measure +: dimension mismatch");
    SparseMeasure r = *this;
    for (const auto& [p, x] : o.v_) r.add(p, x);
    return r;
}

SparseMeasure SparseMeasure::operator-(const SparseMeasure& o) const {
    if (d_ != o.d_) throw std::invalid_argument("measure -: dimension mismatch");
    SparseMeasure r = *this;
    for (const auto& [p, x] : o.v_) r.add(p, -x);
    return r;
}

SparseMeasure convolve(const SparseMeasure& a, const SparseMeasure& b, size_t pair_budget) {
    if (a.dim() != b.dim()) throw std::invalid_argument("convolve: dimension mismatch");
    if (a.support_size() * b.support_size() > pair_budget)
        throw std::runtime_error("convolve: support pair budget exceeded (" +
                                 std::to_string(a.support_size()) + " x " +
                                 std::to_string(b.support_size()) + ")");
    SparseMeasure r(a.dim(), a.provenance());
    for (const auto& [pa, xa] : a.entries())
        for (const auto& [pb, xb] : b.entries()) r.add(pt_add(pa, pb), xa * xb);
    return r;
}

MeasureStats measure_stats(const SparseMeasure& a) {
    MeasureStats s;
    s.support_size = a.support_size();
    for (const auto& [p, x] : a.entries()) {
        Rat ax = abs(x);
        s.l1 += ax;
        s.l2_sq += x * x;
        if (ax > s.linf) s.linf = ax;
        bool origin = true;
        for (int64_t c : p)
            if (c != 0) origin = false;
        if (!origin && ax > s.linf_punctured) s.linf_punctured = ax;
        s.support_radius = std::max(s.support_radius, sup_norm(p));
    }
    return s;
}

void write_jsonl(std::ostream& os, const SparseMeasure& a) {
    for (const auto& [p, x] : a.entries()) {
        os << "{\"pt\":[";
        for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
        os << "],\"num\":" << x.get_num().get_str() << ",\"den\":" << x.get_den().get_str()
           << "}\n";
    }
}

SparseMeasure read_jsonl(std::istream& is, int d) {
    SparseMeasure a(d);
    std::string line;
    auto expect = [&](std::istringstream& ss, const char* tok) {
        for (const char* c = tok; *c; ++c) {
            if (ss.get() != *c) throw std::runtime_error("read_jsonl: malformed line: " + line);
        }
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        expect(ss, "{\"pt\":[");
        Pt p;
        while (true) {
            int64_t c;
            ss >> c;
            p.push_back(c);
            int ch = ss.get();
            if (ch == ']') break;
            if (ch != ',') throw std::runtime_error("read_jsonl: malformed line: " + line);
        }
        expect(ss, ",\"num\":");
        std::string num, den;
        int ch;
        while ((ch = ss.get()) != ',' && ch != EOF) num.push_back((char)ch);
        expect(ss, "\"den\":");
        while ((ch = ss.get()) != '}' && ch != EOF) den.push_back((char)ch);
        Rat x(Int(num, 10), Int(den, 10));
        x.canonicalize();
        a.set(p, x);
    }
    return a;
}

}  // namespace sav
