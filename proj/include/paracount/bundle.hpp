#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "paracount/ffmat.hpp"

namespace paracount {

// E = O(b_1)^{m_1} + ... + O(b_f)^{m_f}, b strictly decreasing, m positive.
struct BundleShape {
    std::vector<int> b;
    std::vector<int> m;

    BundleShape() = default;
    BundleShape(std::vector<int> bs, std::vector<int> ms);
    // from a list of line-bundle degrees with repetition, e.g. {1,0,0}
    static BundleShape from_degrees(std::vector<int> degs);

    int blocks() const { return static_cast<int>(b.size()); }
    int rank() const;
    int degree() const;
    BundleShape twist(int c) const;  // b_i + c
    bool operator==(const BundleShape& o) const { return b == o.b && m == o.m; }
    bool operator<(const BundleShape& o) const;
    std::string to_string() const;
};

struct DivisorSpec {
    const FqField* base = nullptr;
    std::vector<ClosedPoint> points;

    DivisorSpec() = default;
    DivisorSpec(const FqField& F, std::vector<ClosedPoint> pts);
    // deterministic divisor with the given degree profile (closed_points order)
    static DivisorSpec from_profile(const FqField& F, const std::vector<int>& profile);
    std::vector<int> degrees() const;
    int total_degree() const;  // l = sum d_i
};

// Coordinates of End(E) over F_q: block (u,v) with b_u >= b_v carries an
// m_u x m_v matrix of polynomials of degree <= b_u - b_v.
struct EndLayout {
    struct Coord {
        int u, v, row, col, j;
    };
    std::vector<Coord> coords;
    int dim() const { return static_cast<int>(coords.size()); }
};

using EndElement = std::vector<fcode>;  // coefficient per EndLayout coord

// Shape + base field with precomputed layout, multiplication table and
// per-point evaluation data.  Immutable after construction.
class BundleContext {
public:
    BundleContext(BundleShape shape, const FqField& Fq);

    const BundleShape& shape() const { return shape_; }
    const FqField& field() const { return *Fq_; }
    const EndLayout& layout() const { return layout_; }
    int rank() const { return n_; }
    int dim_end() const { return layout_.dim(); }
    long delta() const;  // sum_{u<v} m_u m_v (b_u - b_v - 1)

    EndElement zero_elt() const { return EndElement(layout_.dim(), 0); }
    EndElement identity_elt() const;
    EndElement add_elt(const EndElement& a, const EndElement& b) const;
    EndElement sub_elt(const EndElement& a, const EndElement& b) const;
    EndElement mul_elt(const EndElement& a, const EndElement& b) const;
    EndElement scale_elt(const EndElement& a, fcode s) const;
    bool is_invertible(const EndElement& h) const;  // Levi diagonal blocks invertible
    bool is_nilpotent(const EndElement& h) const;   // Levi diagonal blocks nilpotent
    bool is_scalar(const EndElement& h) const;
    // minimal polynomial of h as an element of the algebra End(E)
    FPoly algebra_min_poly(const EndElement& h) const;

    // evaluation at a closed point of U_1 over the same base field
    const FqField& residue_field(const ClosedPoint& pt) const;
    MatFF evaluate(const EndElement& h, const ClosedPoint& pt) const;

    Int aut_order(const Int& q) const;
    QPoly aut_order_poly() const;
    Int end_order(const Int& q) const;  // q^{dim End}

    // enumeration; throws when the size exceeds `cap`
    void for_each_end(const std::function<void(const EndElement&)>& fn,
                      std::uint64_t cap = (1ULL << 24)) const;
    void for_each_aut(const std::function<void(const EndElement&)>& fn,
                      std::uint64_t cap = (1ULL << 24)) const;
    // elements 1 + eta with eta nilpotent (Levi blocks nilpotent), passed as eta
    void for_each_nilpotent_levi(const std::function<void(const EndElement&)>& fn,
                                 std::uint64_t cap = (1ULL << 24)) const;
    // a generating set of Aut(E): Levi block generators and unipotent shifts
    std::vector<EndElement> aut_generators() const;

    std::uint64_t end_size() const;  // q^{dim}; throws on overflow past 2^62
    std::uint64_t aut_size() const;

    const std::vector<int>& block_offsets() const { return offset_; }
    // coordinate index of (u,v,row,col,j); -1 when the block vanishes
    int coord_index(int u, int v, int row, int col, int j) const;

private:
    struct PointData {
        const FqField* R;
        std::vector<fcode> tpow;  // powers of the class of t
    };
    const PointData& point_data(const ClosedPoint& pt) const;

    BundleShape shape_;
    const FqField* Fq_;
    int n_;
    EndLayout layout_;
    std::vector<int> offset_;
    std::vector<std::vector<int>> block_base_;        // first coord index of block (u,v), -1 if zero
    std::vector<std::array<int, 3>> mult_pairs_;      // (i1, i2, target): c[t] += a[i1] b[i2]
    mutable std::map<std::vector<fcode>, PointData> point_cache_;
    mutable std::mutex point_mu_;
};

// All shapes of rank n and degree d whose consecutive gaps are <= gap_bound-2
// (beyond that bound no geometrically indecomposable structure exists).
std::vector<BundleShape> shapes_of_degree(int n, int d, int gap_bound);

}  // namespace paracount
