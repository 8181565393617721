#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qcb/framed.hpp"

namespace qcb {

/// Decomposition x = sum_t theta_i^{(t)} * x_t with the left derivation of
/// each x_t vanishing. Parts with zero coefficient are dropped.
struct StringParts {
    int node = 0;
    std::map<int, FreeElement> parts;
};

/// Kashiwara operators on the upper half algebra, computed per weight in
/// canonical-basis coordinates.
class AlgebraCrystal {
public:
    explicit AlgebraCrystal(CBTable& cb) : cb_(cb) {}

    CBTable& cb() { return cb_; }

    StringParts string_decompose(int node, const FreeElement& x);
    FreeElement phi_tilde(int node, const FreeElement& x);
    FreeElement eps_tilde(int node, const FreeElement& x);

    /// All canonical coordinates pass the given test (default: the Z[v^-1]
    /// span of the canonical basis).
    bool in_lattice(const FreeElement& x, LatticeTest t = LatticeTest::ZvInv);
    /// x is congruent to a single basis element modulo v^-1 times the
    /// lattice; nullopt if no unique such element exists.
    std::optional<CBIndex> leading_cb(const FreeElement& x,
                                      LatticeTest small = LatticeTest::VinvZvInv);

private:
    const std::vector<FreeElement>& kernel_basis_at(int node, const NodeVec& nu);

    CBTable& cb_;
    std::map<std::pair<int, NodeVec>, std::vector<FreeElement>> ker_;
};

/// Kashiwara operators on a highest weight module, acting on carrier
/// elements. m = sum_t F_i^{(t)} m_t with E_i m_t = 0 in the module.
class ModuleCrystal {
public:
    explicit ModuleCrystal(Module& mod) : mod_(mod) {}

    Module& module() { return mod_; }

    StringParts string_decompose(int node, const FreeElement& m);
    FreeElement f_tilde(int node, const FreeElement& m);
    FreeElement e_tilde(int node, const FreeElement& m);

    /// Module coordinates pass the given test (default: the A-lattice
    /// spanned by the image of the canonical basis).
    bool in_lattice(const FreeElement& m, LatticeTest t = LatticeTest::ARing);
    std::optional<CBIndex> leading_cb(const FreeElement& m,
                                      LatticeTest small = LatticeTest::VinvA);

private:
    const std::vector<FreeElement>& kernel_basis_at(int node, const NodeVec& nu);

    Module& mod_;
    std::map<std::pair<int, NodeVec>, std::vector<FreeElement>> ker_;
};

/// Kashiwara operators on a tensor product of two highest weight modules,
/// acting on elements in the pure-tensor index representation.
class TensorCrystal {
public:
    explicit TensorCrystal(TensorProduct& tp) : tp_(tp) {}

    TensorProduct::Elt f_tilde(int node, const TensorProduct::Elt& x);
    TensorProduct::Elt e_tilde(int node, const TensorProduct::Elt& x);

private:
    std::map<int, TensorProduct::Elt> strings(int node, const TensorProduct::Elt& x);
    const std::vector<TensorProduct::Elt>& kernel_basis_at(int node, const NodeVec& nu);

    TensorProduct& tp_;
    std::map<std::pair<int, NodeVec>, std::vector<TensorProduct::Elt>> ker_;
};

/// phi/eps pair off basis elements along i-strings: phi_tilde(b) has a
/// unique leading basis element b1 with left t-statistic raised by one,
/// eps_tilde(b1) leads back to b, and symmetrically downward.
Report crystal_epsphi_suite(CBTable& cb, int max_tr);

/// Same pairing, restricted to the basis of the sandwich subspace of a
/// framed setup; images must stay inside that subspace.
Report crystal_epsphi_restricted_suite(FramedSetup& fs, int max_tr);

/// Left multiplication by theta_lambda sends basis elements to basis
/// elements, preserves right t-statistics, and hits exactly the left
/// t-statistic-zero part of the sandwich basis.
Report crystal_thetalambda_suite(FramedSetup& fs);

/// The module projection intertwines algebra-side and module-side
/// Kashiwara operators modulo v^-1 times the module lattice.
Report crystal_commute_suite(FramedSetup& fs, int max_tr);

/// Every sandwich basis element is reached from the seeds theta_lambda *
/// theta_0^{(c)} by repeated phi_tilde leading terms.
Report crystal_reach_suite(FramedSetup& fs, int max_tr);

/// On the tensor product, (f_tilde m, m') and (m, e_tilde m') agree up to
/// v^-1 times the A ring on lattice elements.
Report crystal_adjoint_suite(FramedSetup& fs, int max_tr);

}  // namespace qcb
