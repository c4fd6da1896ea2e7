#pragma once

#include "objspec/mdp.hpp"
#include "objspec/occupancy.hpp"
#include "objspec/trajectory.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace objspec {

/// Three-way outcome of comparing two policies under a total preorder.
enum class Ordering { Less, Equal, Greater };

/// Equality band for numeric comparisons; fixtures keep true distinctions
/// above 1e-3, so the band only absorbs solver noise.
inline constexpr double kCompareTol = 1e-9;

inline Ordering ordering_of(double lhs, double rhs, double tol = kCompareTol) {
    if (lhs < rhs - tol) return Ordering::Less;
    if (lhs > rhs + tol) return Ordering::Greater;
    return Ordering::Equal;
}

class LtlFormula; // ltl.hpp
class DeterministicMonitor;

/**
 * Reward machine: a finite Mealy-style machine over environment transitions.
 * delta_u selects the next machine state from (u, s, a, s'); delta_r selects
 * which reward function pays for the step given the machine transition taken.
 */
struct RewardMachine {
    std::vector<std::string> machine_states;
    int start = 0;
    /// delta_u[u][s][a][s'] -> next machine state index
    std::vector<std::vector<std::vector<std::vector<int>>>> delta_u;
    /// delta_r[u][u'] -> reward function applied on that machine transition
    std::vector<std::vector<RewardFunction>> delta_r;
    double gamma = 0.0;

    std::size_t n_machine_states() const { return machine_states.size(); }
    int step(int u, int s, int a, int s2) const { return delta_u[u][s][a][s2]; }
};

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<double(const std::vector<double>&)>;
using ActionDistFn = std::function<double(const std::vector<double>&)>;
using TrajectoryFn = std::function<double(const TrajectoryView&)>;
using OccupancyFn = std::function<double(const OccupancyMeasure&)>;
using LotteryFn = std::function<double(const LotteryCertificate&)>;
using PolicyFn = std::function<double(const Policy&)>;

using RealPreorder = std::function<Ordering(double, double)>;
using VectorPreorder =
    std::function<Ordering(const std::vector<double>&, const std::vector<double>&)>;
using OccupancyPreorder =
    std::function<Ordering(const OccupancyMeasure&, const OccupancyMeasure&)>;
using LotteryPreorder =
    std::function<Ordering(const LotteryCertificate&, const LotteryCertificate&)>;
using PolicyPreorder = std::function<Ordering(const Policy&, const Policy&)>;

// --- the seventeen objective tuples -----------------------------------------

struct MrSpec {
    RewardFunction reward;
    double gamma;
};

struct LarSpec {
    RewardFunction reward;
};

struct LtlSpec {
    std::shared_ptr<const LtlFormula> formula;          ///< either a formula ...
    std::shared_ptr<const DeterministicMonitor> monitor; ///< ... or a prebuilt monitor
};

struct RmSpec {
    RewardMachine machine;
};

struct InmrSpec {
    RewardFunction reward;
    ScalarFn wrapper;
    double gamma;
};

struct ImorlSpec {
    std::vector<RewardFunction> rewards; ///< k components
    VectorFn wrapper;
    double gamma;
};

struct FtrSpec {
    TrajectoryFn f;
};

/// J = E[sum gamma^t (R(s_t,a_t,s_{t+1}) - alpha * F[pi(s_t)])].
struct RrlSpec {
    RewardFunction reward;
    double alpha;
    ActionDistFn regularizer;
    double gamma;
};

struct OnmrSpec {
    RewardFunction reward;
    ScalarFn wrapper;
    double gamma;
};

struct OmorlSpec {
    std::vector<RewardFunction> rewards;
    VectorFn wrapper;
    double gamma;
};

struct FomrSpec {
    OccupancyFn f;
    double gamma;
};

struct FtlrSpec {
    LotteryFn f;
    double gamma; ///< discount of the lottery certificate carrier
};

struct FprSpec {
    PolicyFn j;
};

struct OmoSpec {
    double gamma;
    OccupancyPreorder preorder;
};

struct TloSpec {
    LotteryPreorder preorder;
    double gamma; ///< certificate carrier discount
};

struct GomorlSpec {
    std::vector<RewardFunction> rewards;
    double gamma;
    VectorPreorder preorder;
};

struct PoSpec {
    PolicyPreorder preorder;
};

using ObjectiveSpec =
    std::variant<MrSpec, LarSpec, LtlSpec, RmSpec, InmrSpec, ImorlSpec, FtrSpec, RrlSpec,
                 OnmrSpec, OmorlSpec, FomrSpec, FtlrSpec, FprSpec, OmoSpec, TloSpec,
                 GomorlSpec, PoSpec>;

/// Formalism tags in the fixed table order.
enum class Formalism {
    MR, LAR, LTL, RM, INMR, IMORL, FTR, RRL, ONMR, OMORL, FOMR, FTLR, FPR, OMO, TLO,
    GOMORL, PO
};

inline constexpr int kFormalismCount = 17;

Formalism formalism_of(const ObjectiveSpec& spec);
std::string to_string(Formalism f);
Formalism formalism_from_string(const std::string& name);

/// True for formalisms whose ordering comes from a scalar J.
bool has_scalar_eval(Formalism f);

} // namespace objspec
