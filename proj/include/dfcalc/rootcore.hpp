#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace dfcalc {

using Rational = boost::rational<long long>;

// Integer coefficients over the Dynkin nodes, fundamental-weight basis.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::size_t rank) : c_(rank, 0) {}
    explicit Weight(std::vector<int> coords) : c_(std::move(coords)) {}
    Weight(std::initializer_list<int> coords) : c_(coords) {}

    std::size_t rank() const { return c_.size(); }
    int operator[](std::size_t i) const { return c_[i]; }
    int& operator[](std::size_t i) { return c_[i]; }
    const std::vector<int>& coords() const { return c_; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }

    bool is_zero() const;

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    Weight operator-() const;
    friend Weight operator*(int k, Weight w);

    auto operator<=>(const Weight&) const = default;

private:
    std::vector<int> c_;
};

// "(1,-2,1)"
std::string to_string(const Weight& w);

bool is_dominant(const Weight& w);

class CartanData {
public:
    // Rows are simple roots in fundamental-weight coordinates: A[i][j] = <alpha_i, alpha_j^vee>.
    static CartanData from_matrix(std::vector<std::vector<int>> a, std::string name = "custom");
    static CartanData of_type(char series, int rank);
    // "A3", "B2", "E8", ...
    static CartanData parse(std::string_view name);

    const std::string& name() const { return name_; }
    int rank() const { return static_cast<int>(a_.size()); }
    int entry(int i, int j) const { return a_[i][j]; }
    const std::vector<std::vector<int>>& matrix() const { return a_; }
    const Weight& simple_root(int i) const { return simple_[i]; }
    Weight rho() const;

    // Sorted by height, then coordinates.
    const std::vector<Weight>& positive_roots() const { return positive_; }
    // Simple-root expansions of positive_roots(), same order.
    const std::vector<std::vector<int>>& positive_root_coeffs() const { return positive_coords_; }
    bool is_root(const Weight& w) const { return root_sign_.count(w) != 0; }
    bool is_positive_root(const Weight& w) const;

    // Half the squared length of alpha_i, normalized to coprime integers.
    int symmetrizer(int i) const { return d_[i]; }
    Rational inner(const Weight& x, const Weight& y) const;
    Rational height(const Weight& w) const;
    // height(w) times a fixed positive integer; integral for every weight.
    long long scaled_height(const Weight& w) const;
    // Integer expansion in simple roots; throws if w is outside the root lattice.
    std::vector<int> root_lattice_coords(const Weight& w) const;

    // Sub-diagram on the listed nodes, in the given order.
    CartanData restrict_to(const std::vector<int>& nodes) const;

    bool operator==(const CartanData& o) const { return a_ == o.a_; }

private:
    CartanData() = default;
    void build();
    std::vector<Rational> to_root_coords(const Weight& w) const;

    std::string name_;
    std::vector<std::vector<int>> a_;
    std::vector<Weight> simple_;
    std::vector<int> d_;
    std::vector<std::vector<Rational>> inv_t_;  // (A^T)^{-1}
    std::vector<long long> height_row_;
    std::vector<Weight> positive_;
    std::vector<std::vector<int>> positive_coords_;
    std::map<Weight, int> root_sign_;  // +-(index into positive_ + 1)
};

using CartanPtr = std::shared_ptr<const CartanData>;
CartanPtr make_cartan(std::string_view name);
CartanPtr share(CartanData c);

Weight reflect(const CartanData& c, int i, const Weight& w);

// s_{i1} s_{i2} ... s_{ik}; the last letter acts first. Letters are 0-based nodes.
class WeylWord {
public:
    WeylWord() = default;
    explicit WeylWord(std::vector<int> letters) : letters_(std::move(letters)) {}
    WeylWord(std::initializer_list<int> letters) : letters_(letters) {}

    const std::vector<int>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Weight apply(const CartanData& c, const Weight& w) const;
    WeylWord inverse() const;
    WeylWord then(int i) const;  // this * s_i
    bool same_element(const CartanData& c, const WeylWord& o) const;

    auto operator<=>(const WeylWord&) const = default;

private:
    std::vector<int> letters_;
};

Weight affine_act(const CartanData& c, const WeylWord& w, const Weight& lambda);

// One weight space of an irreducible module. depth[i] is the alpha_i
// coefficient of (highest - weight).
struct WeightSpace {
    Weight weight;
    std::vector<int> depth;
    long long multiplicity = 0;
};

// Freudenthal recursion, ordered by total depth then weight.
std::vector<WeightSpace> weight_diagram(const CartanData& c, const Weight& highest);

using WeightMultiplicities = std::map<Weight, long long>;
WeightMultiplicities weight_multiplicities(const CartanData& c, const Weight& highest);

long long weyl_dimension(const CartanData& c, const Weight& highest);

}  // namespace dfcalc
