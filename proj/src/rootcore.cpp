#include "dfcalc/rootcore.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "dfcalc/error.hpp"

namespace dfcalc {

bool Weight::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
}

Weight& Weight::operator+=(const Weight& o) {
    if (o.rank() != rank()) throw InvalidArgument("weight rank mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    if (o.rank() != rank()) throw InvalidArgument("weight rank mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Weight Weight::operator-() const {
    Weight r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Weight operator*(int k, Weight w) {
    for (auto& x : w.c_) x *= k;
    return w;
}

std::string to_string(const Weight& w) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < w.rank(); ++i) os << (i ? "," : "") << w[i];
    os << ')';
    return os.str();
}

bool is_dominant(const Weight& w) {
    return std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; });
}

namespace {

std::vector<std::vector<int>> zero_matrix(int n) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    return a;
}

void bond(std::vector<std::vector<int>>& a, int i, int j, int aij = -1, int aji = -1) {
    a[i][j] = aij;
    a[j][i] = aji;
}

// Gauss-Jordan over Q. Returns false when singular.
bool invert(std::vector<std::vector<Rational>> m, std::vector<std::vector<Rational>>& inv) {
    const int n = static_cast<int>(m.size());
    inv.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && m[piv][col].numerator() == 0) ++piv;
        if (piv == n) return false;
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        const Rational p = m[col][col];
        for (int j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col].numerator() == 0) continue;
            const Rational f = m[r][col];
            for (int j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return true;
}

// Sylvester: all leading principal minors of a symmetric matrix positive.
bool positive_definite(std::vector<std::vector<Rational>> m) {
    const int n = static_cast<int>(m.size());
    for (int k = 0; k < n; ++k) {
        if (m[k][k].numerator() <= 0) return false;
        for (int r = k + 1; r < n; ++r) {
            const Rational f = m[r][k] / m[k][k];
            for (int j = k; j < n; ++j) m[r][j] -= f * m[k][j];
        }
    }
    return true;
}

constexpr std::size_t kMaxRoots = 4096;

}  // namespace

CartanData CartanData::from_matrix(std::vector<std::vector<int>> a, std::string name) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw InvalidArgument("Cartan matrix is not square");
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] != 2) throw InvalidArgument("Cartan matrix needs 2 on the diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (a[i][j] > 0) throw InvalidArgument("Cartan matrix has a positive off-diagonal entry");
            if ((a[i][j] == 0) != (a[j][i] == 0))
                throw InvalidArgument("Cartan matrix zero pattern is not symmetric");
        }
    }
    CartanData c;
    c.name_ = std::move(name);
    c.a_ = std::move(a);
    c.build();
    return c;
}

CartanData CartanData::of_type(char series, int n) {
    if (n < 1) throw InvalidArgument("rank must be positive");
    auto a = zero_matrix(n);
    std::string name = std::string(1, series) + std::to_string(n);
    switch (series) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i) bond(a, i, i + 1);
        break;
    case 'B':
        if (n < 2) throw InvalidArgument("B_n needs n >= 2");
        for (int i = 0; i + 2 < n; ++i) bond(a, i, i + 1);
        bond(a, n - 2, n - 1, -2, -1);  // alpha_n short
        break;
    case 'C':
        if (n < 2) throw InvalidArgument("C_n needs n >= 2");
        for (int i = 0; i + 2 < n; ++i) bond(a, i, i + 1);
        bond(a, n - 2, n - 1, -1, -2);  // alpha_n long
        break;
    case 'D':
        if (n < 4) throw InvalidArgument("D_n needs n >= 4");
        for (int i = 0; i + 3 < n; ++i) bond(a, i, i + 1);
        bond(a, n - 3, n - 2);
        bond(a, n - 3, n - 1);
        break;
    case 'E':
        if (n < 6 || n > 8) throw InvalidArgument("E_n needs 6 <= n <= 8");
        // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
        bond(a, 0, 2);
        bond(a, 1, 3);
        for (int i = 2; i + 1 < n; ++i) bond(a, i, i + 1);
        break;
    case 'F':
        if (n != 4) throw InvalidArgument("F_n exists only for n = 4");
        bond(a, 0, 1);
        bond(a, 1, 2, -2, -1);
        bond(a, 2, 3);
        break;
    case 'G':
        if (n != 2) throw InvalidArgument("G_n exists only for n = 2");
        bond(a, 0, 1, -1, -3);
        break;
    default:
        throw InvalidArgument(std::string("unknown Cartan series '") + series + "'");
    }
    return from_matrix(std::move(a), std::move(name));
}

CartanData CartanData::parse(std::string_view s) {
    if (s.size() < 2 || s[0] < 'A' || s[0] > 'G')
        throw InvalidArgument("bad Cartan type '" + std::string(s) + "'");
    int n = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9' || n > 100)
            throw InvalidArgument("bad Cartan type '" + std::string(s) + "'");
        n = n * 10 + (s[i] - '0');
    }
    return of_type(s[0], n);
}

void CartanData::build() {
    const int n = rank();
    simple_.clear();
    for (int i = 0; i < n; ++i) simple_.emplace_back(a_[i]);

    // Symmetrizer: (alpha_i, alpha_j) = A_ij d_j must be symmetric.
    std::vector<Rational> d(n, Rational(0));
    for (int start = 0; start < n; ++start) {
        if (d[start].numerator() != 0) continue;
        d[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (j == i || a_[i][j] == 0) continue;
                const Rational dj = d[i] * a_[j][i] / a_[i][j];
                if (d[j].numerator() == 0) {
                    d[j] = dj;
                    stack.push_back(j);
                } else if (d[j] != dj) {
                    throw InvalidArgument("Cartan matrix is not symmetrizable");
                }
            }
        }
    }
    long long l = 1;
    for (const auto& x : d) l = std::lcm(l, x.denominator());
    long long g = 0;
    for (const auto& x : d) g = std::gcd(g, (x * l).numerator());
    d_.assign(n, 0);
    for (int i = 0; i < n; ++i) d_[i] = static_cast<int>((d[i] * l).numerator() / (g ? g : 1));

    std::vector<std::vector<Rational>> sym(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sym[i][j] = Rational(a_[i][j]) * d_[j];
    if (!positive_definite(sym)) throw InvalidArgument("Cartan matrix is not of finite type");

    std::vector<std::vector<Rational>> at(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) at[i][j] = a_[j][i];
    if (!invert(at, inv_t_)) throw InvalidArgument("Cartan matrix is singular");
    std::vector<Rational> hrow(n, Rational(0));
    long long hden = 1;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) hrow[j] += inv_t_[i][j];
        hden = std::lcm(hden, hrow[j].denominator());
    }
    height_row_.assign(n, 0);
    for (int j = 0; j < n; ++j) height_row_[j] = (hrow[j] * hden).numerator();

    // Positive roots by height via root strings.
    std::set<std::vector<int>> known;
    std::vector<std::vector<int>> layer;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        layer.push_back(e);
        known.insert(e);
    }
    positive_coords_.clear();
    while (!layer.empty()) {
        std::set<std::vector<int>> next;
        for (const auto& beta : layer) {
            positive_coords_.push_back(beta);
            for (int i = 0; i < n; ++i) {
                int pair = 0;  // <beta, alpha_i^vee>
                for (int j = 0; j < n; ++j) pair += beta[j] * a_[j][i];
                int down = 0;
                auto probe = beta;
                while (true) {
                    probe[i] -= 1;
                    if (!known.count(probe)) break;
                    ++down;
                }
                if (down - pair > 0) {
                    auto up = beta;
                    up[i] += 1;
                    if (!known.count(up)) next.insert(up);
                }
            }
        }
        layer.assign(next.begin(), next.end());
        for (const auto& r : layer) known.insert(r);
        if (known.size() > kMaxRoots) throw InvalidArgument("root system too large");
    }

    positive_.clear();
    root_sign_.clear();
    for (const auto& rc : positive_coords_) {
        Weight w(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[j] += rc[i] * a_[i][j];
        positive_.push_back(w);
        const int k = static_cast<int>(positive_.size());
        root_sign_[w] = k;
        root_sign_[-w] = -k;
    }
}

Weight CartanData::rho() const {
    return Weight(std::vector<int>(a_.size(), 1));
}

bool CartanData::is_positive_root(const Weight& w) const {
    auto it = root_sign_.find(w);
    return it != root_sign_.end() && it->second > 0;
}

std::vector<Rational> CartanData::to_root_coords(const Weight& w) const {
    const int n = rank();
    if (static_cast<int>(w.rank()) != n) throw InvalidArgument("weight rank does not match Cartan type");
    std::vector<Rational> c(n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[i] += inv_t_[i][j] * w[j];
    return c;
}

Rational CartanData::inner(const Weight& x, const Weight& y) const {
    const auto cx = to_root_coords(x);
    Rational s = 0;
    for (int j = 0; j < rank(); ++j) s += cx[j] * (static_cast<long long>(y[j]) * d_[j]);
    return s;
}

Rational CartanData::height(const Weight& w) const {
    Rational s = 0;
    for (const auto& x : to_root_coords(w)) s += x;
    return s;
}

long long CartanData::scaled_height(const Weight& w) const {
    if (static_cast<int>(w.rank()) != rank()) throw InvalidArgument("weight rank does not match Cartan type");
    long long s = 0;
    for (int j = 0; j < rank(); ++j) s += height_row_[j] * w[j];
    return s;
}

std::vector<int> CartanData::root_lattice_coords(const Weight& w) const {
    if (auto it = root_sign_.find(w); it != root_sign_.end()) {
        auto out = positive_coords_[std::abs(it->second) - 1];
        if (it->second < 0)
            for (auto& x : out) x = -x;
        return out;
    }
    std::vector<int> out;
    for (const auto& x : to_root_coords(w)) {
        if (x.denominator() != 1) throw InvalidArgument("weight " + to_string(w) + " is not in the root lattice");
        out.push_back(static_cast<int>(x.numerator()));
    }
    return out;
}

CartanData CartanData::restrict_to(const std::vector<int>& nodes) const {
    std::vector<std::vector<int>> sub(nodes.size(), std::vector<int>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) sub[i][j] = a_.at(nodes[i]).at(nodes[j]);
    return from_matrix(std::move(sub), name_ + "|levi");
}

CartanPtr make_cartan(std::string_view name) {
    return std::make_shared<const CartanData>(CartanData::parse(name));
}

CartanPtr share(CartanData c) {
    return std::make_shared<const CartanData>(std::move(c));
}

Weight reflect(const CartanData& c, int i, const Weight& w) {
    if (i < 0 || i >= c.rank()) throw InvalidArgument("node index " + std::to_string(i) + " out of range");
    if (static_cast<int>(w.rank()) != c.rank()) throw InvalidArgument("weight rank does not match Cartan type");
    Weight r = w;
    const int k = w[i];
    if (k == 0) return r;
    for (int j = 0; j < c.rank(); ++j) r[j] -= k * c.entry(i, j);
    return r;
}

Weight WeylWord::apply(const CartanData& c, const Weight& w) const {
    Weight r = w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r = reflect(c, *it, r);
    return r;
}

WeylWord WeylWord::inverse() const {
    return WeylWord(std::vector<int>(letters_.rbegin(), letters_.rend()));
}

WeylWord WeylWord::then(int i) const {
    auto l = letters_;
    l.push_back(i);
    return WeylWord(std::move(l));
}

bool WeylWord::same_element(const CartanData& c, const WeylWord& o) const {
    return apply(c, c.rho()) == o.apply(c, c.rho());
}

Weight affine_act(const CartanData& c, const WeylWord& w, const Weight& lambda) {
    return w.apply(c, lambda + c.rho()) - c.rho();
}

std::vector<WeightSpace> weight_diagram(const CartanData& c, const Weight& highest) {
    const int n = c.rank();
    if (static_cast<int>(highest.rank()) != n) throw InvalidArgument("weight rank does not match Cartan type");
    if (!is_dominant(highest)) throw InvalidArgument("highest weight " + to_string(highest) + " is not dominant");

    // Everything stays integral: (nu, alpha) = sum_j coeff_j(alpha) d_j nu_j for a
    // positive root alpha, and |lambda+rho|^2 - |mu+rho|^2 = (lambda-mu, lambda+mu+2rho).
    const auto& roots = c.positive_roots();
    const auto& root_coeffs = c.positive_root_coeffs();
    auto pair_with_root = [&](const Weight& nu, std::size_t a) {
        long long s = 0;
        for (int j = 0; j < n; ++j) s += static_cast<long long>(root_coeffs[a][j]) * c.symmetrizer(j) * nu[j];
        return s;
    };

    if (n == 0) return {WeightSpace{highest, {}, 1}};

    std::map<Weight, WeightSpace> found;
    found[highest] = WeightSpace{highest, std::vector<int>(n, 0), 1};
    std::vector<Weight> layer{highest};
    const Weight two_rho = 2 * c.rho();

    while (!layer.empty()) {
        std::set<Weight> candidates;
        for (const auto& w : layer)
            for (int i = 0; i < n; ++i) candidates.insert(w - c.simple_root(i));
        std::vector<Weight> next;
        for (const auto& mu : candidates) {
            if (found.count(mu)) continue;
            // depth of mu from any parent in the previous layer
            std::vector<int> depth;
            for (int i = 0; i < n; ++i) {
                auto it = found.find(mu + c.simple_root(i));
                if (it != found.end()) {
                    depth = it->second.depth;
                    depth[i] += 1;
                    break;
                }
            }
            long long numer = 0;
            for (std::size_t a = 0; a < roots.size(); ++a) {
                Weight up = mu + roots[a];
                std::vector<int> up_depth = depth;
                for (int j = 0; j < n; ++j) up_depth[j] -= root_coeffs[a][j];
                while (std::all_of(up_depth.begin(), up_depth.end(), [](int x) { return x >= 0; })) {
                    auto it = found.find(up);
                    if (it != found.end()) numer += it->second.multiplicity * pair_with_root(up, a);
                    up += roots[a];
                    for (int j = 0; j < n; ++j) up_depth[j] -= root_coeffs[a][j];
                }
            }
            const Weight sum = highest + mu + two_rho;
            long long denom = 0;
            for (int j = 0; j < n; ++j) denom += static_cast<long long>(depth[j]) * c.symmetrizer(j) * sum[j];
            if (denom == 0) continue;  // a shifted-orbit point of lambda; never a weight
            if ((2 * numer) % denom != 0) throw std::logic_error("Freudenthal recursion produced a fraction");
            const long long m = 2 * numer / denom;
            if (m <= 0) continue;
            found[mu] = WeightSpace{mu, depth, m};
            next.push_back(mu);
        }
        layer = std::move(next);
    }

    std::vector<WeightSpace> out;
    out.reserve(found.size());
    for (auto& kv : found) out.push_back(std::move(kv.second));
    std::sort(out.begin(), out.end(), [](const WeightSpace& x, const WeightSpace& y) {
        const int dx = std::accumulate(x.depth.begin(), x.depth.end(), 0);
        const int dy = std::accumulate(y.depth.begin(), y.depth.end(), 0);
        if (dx != dy) return dx < dy;
        return x.weight > y.weight;
    });
    return out;
}

WeightMultiplicities weight_multiplicities(const CartanData& c, const Weight& highest) {
    WeightMultiplicities out;
    for (auto& ws : weight_diagram(c, highest)) out[ws.weight] = ws.multiplicity;
    return out;
}

long long weyl_dimension(const CartanData& c, const Weight& highest) {
    if (static_cast<int>(highest.rank()) != c.rank()) throw InvalidArgument("weight rank does not match Cartan type");
    if (!is_dominant(highest)) throw InvalidArgument("highest weight " + to_string(highest) + " is not dominant");
    const Weight shifted = highest + c.rho();
    Rational prod = 1;
    for (const auto& r : c.positive_roots()) prod *= c.inner(shifted, r) / c.inner(c.rho(), r);
    if (prod.denominator() != 1) throw std::logic_error("Weyl dimension formula produced a fraction");
    return prod.numerator();
}

}  // namespace dfcalc
