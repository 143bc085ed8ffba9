#pragma once

#include "qspr/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qspr {

// Weight in fundamental-weight coordinates (Dynkin labels).
struct Weight {
    std::vector<long> v;

    Weight() = default;
    explicit Weight(std::size_t n) : v(n, 0) {}
    explicit Weight(std::vector<long> labels) : v(std::move(labels)) {}

    std::size_t size() const { return v.size(); }
    long operator[](std::size_t i) const { return v[i]; }
    long& operator[](std::size_t i) { return v[i]; }
    bool is_zero() const;
    bool operator==(const Weight&) const = default;
    auto operator<=>(const Weight&) const = default;
    Weight operator-() const;
    Weight& operator+=(const Weight& b);
    Weight& operator-=(const Weight& b);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(long k, Weight a);
};

struct SimpleComponent {
    char family;
    int rank;
    int offset;
};

class RootDatum {
public:
    // "A3", "F4", "A1xA1", "A2xA2"
    static std::shared_ptr<const RootDatum> make(const std::string& type);
    static std::shared_ptr<const RootDatum> make(char family, int rank);

    const std::string& label() const { return label_; }
    int rank() const { return n_; }
    const std::vector<SimpleComponent>& components() const { return comps_; }
    bool is_simple() const { return comps_.size() == 1; }

    // (alpha_i, alpha_j)
    long form(int i, int j) const { return form_[i][j]; }
    // 2(alpha_i, alpha_j)/(alpha_j, alpha_j)
    long cartan(int i, int j) const { return 2 * form_[i][j] / form_[j][j]; }
    // exponent of q_i = q^{(alpha_i, alpha_i)/2}
    Rational qi_exponent(int i) const { return frac(form_[i][i], 2); }

    Weight alpha(int i) const;
    Weight omega(int i) const;
    Weight rho() const;
    Weight zero() const { return Weight(static_cast<std::size_t>(n_)); }

    Rational inner(const Weight& a, const Weight& b) const;
    std::vector<Rational> root_coords(const Weight& w) const;
    Weight from_root_coords(const std::vector<long>& c) const;
    // nonnegative integer root coordinates if w in N_0 pi
    std::optional<std::vector<long>> nonneg_root_coords(const Weight& w) const;
    bool in_root_lattice(const Weight& w) const;

    const std::vector<Weight>& positive_roots() const { return pos_roots_; }
    const std::vector<std::vector<long>>& positive_root_coords() const { return pos_coords_; }

    bool is_dominant(const Weight& w) const;
    Weight reflect(int i, const Weight& w) const;
    Weight w0(const Weight& w) const { return apply(w0_, w); }
    // longest element of the parabolic subgroup generated by nodes
    std::vector<Weight> longest_element(const std::vector<int>& nodes) const;
    static Weight apply(const std::vector<Weight>& images_of_omegas, const Weight& w);

    // mu <= gamma iff gamma - mu in N_0 pi
    bool dominance_leq(const Weight& mu, const Weight& gamma) const;
    // all dominant nu <= mu, including mu
    std::vector<Weight> dominant_below(const Weight& mu) const;
    bool is_minimal(const Weight& mu) const;
    std::vector<Weight> enumerate_minimal() const;
    mpz_class weyl_dimension(const Weight& mu) const;
    // lcm of denominators of (omega_i, omega_j)
    long form_denominator() const;

    std::string format(const Weight& w) const;
    Weight parse_weight(const std::string& text) const;

private:
    RootDatum() = default;
    void build();

    std::string label_;
    int n_ = 0;
    std::vector<SimpleComponent> comps_;
    std::vector<std::vector<long>> form_;
    std::vector<std::vector<Rational>> omega_form_;   // (omega_i, omega_j)
    std::vector<std::vector<Rational>> inv_cartan_t_; // labels -> root coords
    std::vector<Weight> pos_roots_;
    std::vector<std::vector<long>> pos_coords_;
    std::vector<Weight> w0_;
};

using RootDatumPtr = std::shared_ptr<const RootDatum>;

// Satake-type involution data.
class InvolutionDatum {
public:
    InvolutionDatum(RootDatumPtr datum, std::vector<int> pi_theta, std::vector<int> d, std::string label = "");

    const RootDatum& datum() const { return *datum_; }
    const RootDatumPtr& datum_ptr() const { return datum_; }
    const std::string& label() const { return label_; }
    const std::vector<int>& pi_theta() const { return pi_theta_; }
    bool in_pi_theta(int i) const { return in_theta_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& d() const { return d_; }
    int p(int i) const { return p_[static_cast<std::size_t>(i)]; }

    Weight theta(const Weight& w) const { return RootDatum::apply(theta_, w); }
    Weight w0prime(const Weight& w) const { return RootDatum::apply(w0p_, w); }
    // lattice basis of {lambda : theta(lambda) = lambda}
    const std::vector<Weight>& fixed_lattice() const { return fixed_; }

    bool pzb_member(const Weight& mu) const;

    // Araki-style presets. r is the Araki parameter where one exists.
    static InvolutionDatum preset(const std::string& label, int rank, int r = 0);
    // g' + g' with the copy swap, g' = family/rank
    static InvolutionDatum diagonal(const std::string& simple_type);

private:
    RootDatumPtr datum_;
    std::vector<int> pi_theta_;
    std::vector<bool> in_theta_;
    std::vector<int> d_;
    std::string label_;
    std::vector<int> p_;
    std::vector<Weight> theta_, w0p_;
    std::vector<Weight> fixed_;
};

// Reference tables of minimal weights. Entries are text in the symbols
// w1..wn, w(n-1), with n the rank.
struct TableRow {
    std::string key;
    std::string entries;
};
const std::vector<TableRow>& minimal_weight_table();
const std::vector<TableRow>& pzb_minimal_table();
std::vector<Weight> instantiate_table_entry(const RootDatum& datum, const std::string& entries);
std::optional<std::string> table1_entry(const RootDatum& datum);
// Table 2 row key for an involution label, if any
std::optional<TableRow> table2_row(const InvolutionDatum& inv, int r);

struct PzbComparison {
    std::vector<Weight> equation_minimal;
    std::vector<Weight> table;
    bool has_table = false;
    bool derived_reference = false;
    std::string table_key;
    std::vector<Weight> only_equation, only_table;
    bool agree() const { return only_equation.empty() && only_table.empty(); }
};
PzbComparison pzb_table_compare(const InvolutionDatum& inv, int r = 0);

}  // namespace qspr
