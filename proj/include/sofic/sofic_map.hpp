#pragma once
//
// Sofic maps sigma: G -> Sym(d) for the supported group families, their
// multiplicativity / freeness defects and a spectral ergodicity proxy.
//

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "sofic/group.hpp"
#include "sofic/permutation.hpp"

namespace sofic {

inline constexpr int kDefaultWordCap = 8;

class SoficMap
{
  public:
    // Free: independent uniform generator permutations from the seeded
    // generator, extended homomorphically over reduced words.
    // Z^k: translation action on (Z/m)^k, d = m^k.
    // Finite: left regular action, d = |G|.
    static SoficMap build(const GroupSpec& group, std::size_t degree, std::optional<std::uint64_t> seed = {},
                          int word_cap = kDefaultWordCap);

    // Homomorphic extension of explicit generator images (free or Z^k).
    // Z^k images are expected to commute; this is not checked.
    static SoficMap from_generators(const GroupSpec& group, std::vector<Permutation> images,
                                    int word_cap = kDefaultWordCap);

    // Copy whose value at g is replaced by p. Used to build non-homomorphic maps.
    SoficMap with_override(const GroupElement& g, Permutation p) const;

    const GroupSpec& group() const noexcept { return group_; }
    std::size_t degree() const noexcept { return degree_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }
    int word_cap() const noexcept { return word_cap_; }
    // Z^k modulus m, 0 for other families.
    std::int64_t modulus() const noexcept { return modulus_; }
    const std::vector<Permutation>& generator_images() const noexcept { return generators_; }

    // Memoised; throws CapExceededError for free words longer than the cap.
    Permutation evaluate(const GroupElement& g) const;

  private:
    SoficMap(GroupSpec group, std::size_t degree) : group_(std::move(group)), degree_(degree) {}

    Permutation compute(const GroupElement& g) const;

    struct Cache
    {
        std::mutex mutex;
        std::map<GroupElement, Permutation> values;
    };

    GroupSpec group_;
    std::size_t degree_ = 0;
    std::optional<std::uint64_t> seed_;
    int word_cap_ = kDefaultWordCap;
    std::int64_t modulus_ = 0;
    std::vector<Permutation> generators_;
    std::map<GroupElement, Permutation> overrides_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Fraction of k with sigma(g)sigma(h)(k) != sigma(gh)(k).
double multiplicativity_defect(const SoficMap& sigma, const GroupElement& g, const GroupElement& h);

// Fraction of k with sigma(g)(k) == sigma(h)(k); g != h required.
double freeness_defect(const SoficMap& sigma, const GroupElement& g, const GroupElement& h);

struct PairDefect
{
    GroupElement g;
    GroupElement h;
    double multiplicativity = 0.0;
    double freeness = 0.0;
};

struct DefectReport
{
    std::vector<PairDefect> pairs;
    int word_cap = 0;

    double max_multiplicativity() const;
    double max_freeness() const;
    double mean_freeness() const;
};

// All ordered pairs g != h from elements.
DefectReport defect_report(const SoficMap& sigma, const std::vector<GroupElement>& elements);

struct SpectralGapReport
{
    double gap = 0.0;        // 1 - lambda_abs
    double lambda_abs = 0.0; // largest |eigenvalue| on mean-zero vectors
    double lambda_top = 0.0; // largest eigenvalue on mean-zero vectors
    double lambda_bottom = 0.0;
    bool dense = true;
    bool converged = true;
};

// Spectrum of A = (1 / 2|gens|) sum_g (P_g + P_g^T) on the mean-zero subspace.
SpectralGapReport spectral_gap(const SoficMap& sigma, const std::vector<GroupElement>& gens);

// Ergodicity convention: gap >= threshold counts as ergodic at this stage.
inline constexpr double kErgodicGapThreshold = 0.01;

struct ObstructionReport
{
    double best_invariance_defect = 0.0; // min over candidates of max_g u(A Δ σ(g)A)
    double balance = 0.0;                // u(A) of the best candidate
    std::size_t candidates = 0;
    bool exhaustive = false;
    bool found = false; // false when no near-balanced subset exists
};

// Searches near-balanced subsets A (u(A) in [1/4, 3/4]): exhaustively for
// d <= 16, otherwise random subsets plus sweep cuts along the top mean-zero
// eigenvector of the averaged transition operator.
ObstructionReport invariant_set_obstruction(const SoficMap& sigma, const std::vector<GroupElement>& gens,
                                            int trials, std::uint64_t seed = 0);

// max_g u(A Δ σ(g)A) for an indicator vector.
double invariance_defect(const SoficMap& sigma, const std::vector<GroupElement>& gens,
                         const std::vector<char>& indicator);

} // namespace sofic
