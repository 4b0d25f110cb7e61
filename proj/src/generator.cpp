#include "pathsel/generator.hpp"

#include <cassert>

namespace pathsel {

FitnessReport fitness(const ir::UnitDef& unit, const PathCondition& pc, std::span<const std::int64_t> args,
                      std::uint64_t step_limit) {
  FitnessReport report;
  TestCase test{std::vector<std::int64_t>(args.begin(), args.end()), {}};
  try {
    CtorResult ctor = execute_constructor(unit, test, step_limit);
    const auto* state = std::get_if<ConcreteFieldState>(&ctor);
    if (state == nullptr) {
      report.ctor_threw = true;
      return report;
    }
    const Evaluation eval = evaluate(pc, *state);
    report.satisfied_prefix = eval.satisfied_prefix;
    if (!eval.first_violation) {
      report.solved = true;
      report.score = static_cast<double>(pc.size()) + 1.0;
    } else {
      const double d = eval.first_violation->distance;
      report.score = static_cast<double>(eval.satisfied_prefix) + (1.0 - d / (d + 1.0));
    }
  } catch (const DivergenceError&) {
    report.faulted = true;
  } catch (const ExecutionError&) {
    report.faulted = true;
  } catch (const EvalError&) {
    report.faulted = true;
  }
  return report;
}

namespace {

struct Individual {
  std::vector<std::int64_t> genes;
  FitnessReport fit;
};

class Search {
 public:
  Search(const ir::UnitDef& unit, const PathCondition& pc, const SearchConfig& config, const SearchBudget& budget,
         Rng& rng)
      : unit_(unit),
        pc_(pc),
        config_(config),
        budget_(budget),
        rng_(rng),
        arity_(unit.params.size()),
        start_(std::chrono::steady_clock::now()) {}

  SolveResult run(std::span<const std::vector<std::int64_t>> hints) {
    std::vector<std::vector<std::int64_t>> seeds;
    seeds.emplace_back(arity_, 0);
    for (const auto& h : hints) {
      if (h.size() == arity_) seeds.push_back(h);
    }
    const auto size = static_cast<std::size_t>(std::max(config_.population, 2));
    while (seeds.size() < size) seeds.push_back(random_genes());
    seeds.resize(size);

    std::vector<Individual> pop;
    pop.reserve(size);
    for (auto& genes : seeds) {
      if (!add_evaluated(pop, std::move(genes))) return finish();
    }

    std::size_t best = best_index(pop);
    double best_score = pop[best].fit.score;
    int stagnant = 0;
    for (;;) {
      std::vector<Individual> next;
      next.reserve(size);
      next.push_back(pop[best]);
      while (next.size() < size) {
        const Individual& a = pop[tournament(pop)];
        const Individual& b = pop[tournament(pop)];
        std::vector<std::int64_t> child = a.genes;
        for (std::size_t g = 0; g < arity_; ++g) {
          if (uniform01(rng_) < config_.crossover_prob) child[g] = b.genes[g];
        }
        mutate(child);
        if (!add_evaluated(next, std::move(child))) return finish();
      }
      pop = std::move(next);
      ++result_.generations;

      best = best_index(pop);
      if (pop[best].fit.score > best_score) {
        best_score = pop[best].fit.score;
        stagnant = 0;
      } else if (++stagnant >= config_.stagnation_restart) {
        stagnant = 0;
        std::vector<Individual> reseeded;
        reseeded.reserve(size);
        reseeded.push_back(pop[best]);
        while (reseeded.size() < size) {
          if (!add_evaluated(reseeded, random_genes())) return finish();
        }
        pop = std::move(reseeded);
        best = 0;
      }
    }
  }

 private:
  bool budget_left() const {
    if (budget_.max_evaluations && result_.evaluations >= *budget_.max_evaluations) return false;
    if (budget_.wall && std::chrono::steady_clock::now() - start_ >= *budget_.wall) return false;
    return true;
  }

  // Evaluates and appends; false when the search must stop (solved or out
  // of budget).
  bool add_evaluated(std::vector<Individual>& into, std::vector<std::int64_t> genes) {
    if (!budget_left()) return false;
    FitnessReport fit = fitness(unit_, pc_, genes, config_.step_limit);
    ++result_.evaluations;
    result_.best_score = std::max(result_.best_score, fit.score);
    if (fit.solved) {
      result_.status = SolveStatus::kSolved;
      result_.test = TestCase{genes, canonical(pc_)};
      into.push_back({std::move(genes), fit});
      return false;
    }
    into.push_back({std::move(genes), fit});
    return true;
  }

  SolveResult finish() {
    result_.elapsed = std::chrono::steady_clock::now() - start_;
    return result_;
  }

  static std::size_t best_index(const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
      if (pop[i].fit.score > pop[best].fit.score) best = i;
    }
    return best;
  }

  std::size_t tournament(const std::vector<Individual>& pop) {
    const auto last = static_cast<std::int64_t>(pop.size()) - 1;
    std::size_t winner = static_cast<std::size_t>(uniform_int(rng_, 0, last));
    for (int i = 1; i < config_.tournament; ++i) {
      const auto challenger = static_cast<std::size_t>(uniform_int(rng_, 0, last));
      if (pop[challenger].fit.score > pop[winner].fit.score) winner = challenger;
    }
    return winner;
  }

  std::int64_t random_gene() { return uniform_int(rng_, -config_.init_range, config_.init_range); }

  std::vector<std::int64_t> random_genes() {
    std::vector<std::int64_t> genes(arity_);
    for (auto& g : genes) g = random_gene();
    return genes;
  }

  void mutate(std::vector<std::int64_t>& genes) {
    if (arity_ == 0) return;
    const double rate = 1.0 / static_cast<double>(arity_);
    for (auto& g : genes) {
      if (uniform01(rng_) >= rate) continue;
      if (uniform01(rng_) < config_.resample_prob) {
        g = random_gene();
      } else {
        const std::int64_t delta = geometric(rng_, config_.mutation_mean);
        g = wrap_arith(uniform01(rng_) < 0.5 ? ArithOp::kSub : ArithOp::kAdd, g, delta);
      }
    }
  }

  const ir::UnitDef& unit_;
  const PathCondition& pc_;
  const SearchConfig& config_;
  const SearchBudget& budget_;
  Rng& rng_;
  std::size_t arity_;
  std::chrono::steady_clock::time_point start_;
  SolveResult result_;
};

}  // namespace

SolveResult solve(const ir::UnitDef& unit, const PathCondition& pc, const SearchConfig& config,
                  const SearchBudget& budget, Rng& rng, std::span<const std::vector<std::int64_t>> hints) {
  assert(!pc.empty());
  return Search(unit, pc, config, budget, rng).run(hints);
}

}  // namespace pathsel
