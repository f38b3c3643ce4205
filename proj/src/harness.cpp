#include <random>
#include <sstream>

#include "akb/blp.hpp"
#include "akb/parser.hpp"
#include "akb/trace_io.hpp"

namespace akb {

LatticePtr harness_lattice(const std::string& name) {
  if (name == "chain3") return std::make_shared<const Lattice>(Lattice::chain({"1", "2", "3"}));
  if (name == "diamond") return std::make_shared<const Lattice>(Lattice::diamond());
  throw Error(ErrorCode::UnknownLevelName, "unknown harness lattice '" + name + "'");
}

namespace {

class NetGen {
 public:
  NetGen(std::uint64_t seed, LatticePtr lat, const HarnessConfig& cfg)
      : rng_(seed), lat_(std::move(lat)), cfg_(cfg) {}

  Net make() {
    const auto policy = std::make_shared<const Policy>(blp_policy());
    const std::size_t n = uniform(cfg_.min_locations, cfg_.max_locations);
    for (std::size_t i = 0; i < n; ++i) names_.push_back(std::string(1, char('A' + i)));
    Net net;
    net.lattice = lat_;
    for (const auto& name : names_) {
      const Level s = level();
      std::vector<Level> below;
      for (std::size_t k = 0; k < lat_->size(); ++k)
        if (lat_->leq(lat_->at(k), s)) below.push_back(lat_->at(k));
      const Level c = below[uniform(0, below.size() - 1)];
      LocatedItem proc;
      proc.name = name;
      proc.annot = Annotation{LocalizedState{s, c, lat_->bottom(), level()}, policy};
      fresh_ = 0;
      proc.body = process(uniform(1, cfg_.max_actions), {});
      net.items.push_back(std::move(proc));
      const std::size_t tuples = uniform(0, 2);
      for (std::size_t k = 0; k < tuples; ++k) {
        const Level l = level();
        LocatedItem t;
        t.name = name;
        t.annot = Annotation{LocalizedState{l, l, lat_->bottom(), l}, policy};
        Tuple data;
        const std::size_t arity = uniform(1, 2);
        for (std::size_t j = 0; j < arity; ++j) data.push_back(word());
        t.body = std::move(data);
        net.items.push_back(std::move(t));
      }
    }
    for (auto& item : net.items) item.uid = net.next_uid++;
    return net;
  }

 private:
  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  Level level() { return lat_->at(uniform(0, lat_->size() - 1)); }
  std::string word() { return uniform(0, 1) ? "a" : "b"; }

  Process process(std::size_t budget, std::vector<std::string> bound) {
    if (budget == 0) return Process::nil();
    if (budget >= 2 && uniform(0, 3) == 0) {
      const std::size_t left = uniform(1, budget - 1);
      std::vector<Branch> branches;
      for (std::size_t b : {left, budget - left}) {
        auto scope = bound;
        Action a = action(scope);
        branches.push_back(Branch{std::move(a), process(b - 1, scope)});
      }
      return Process::choice(std::move(branches));
    }
    Action a = action(bound);
    return Process::prefix(std::move(a), process(budget - 1, bound));
  }

  Action action(std::vector<std::string>& bound) {
    Action a;
    a.kind = static_cast<ActionKind>(uniform(0, 2));
    a.target = LocRef::literal(names_[uniform(0, names_.size() - 1)]);
    const std::size_t arity = uniform(1, 2);
    std::vector<std::string> binders;
    for (std::size_t i = 0; i < arity; ++i) {
      if (a.kind == ActionKind::Out) {
        if (!bound.empty() && uniform(0, 1))
          a.args.push_back(Pattern::var(bound[uniform(0, bound.size() - 1)]));
        else
          a.args.push_back(Pattern::literal(word()));
      } else if (uniform(0, 2) != 0) {
        binders.push_back("v" + std::to_string(fresh_++));
        a.args.push_back(Pattern::binder(binders.back()));
      } else {
        a.args.push_back(Pattern::literal(word()));
      }
    }
    bound.insert(bound.end(), binders.begin(), binders.end());
    return a;
  }

  std::mt19937_64 rng_;
  LatticePtr lat_;
  const HarnessConfig& cfg_;
  std::vector<std::string> names_;
  std::size_t fresh_ = 0;
};

std::string violations_text(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) out += "    " + v.property + ": " + v.explanation + "\n";
  return out;
}

}  // namespace

Net random_net(std::uint64_t seed, const LatticePtr& lattice, const HarnessConfig& cfg) {
  return NetGen(seed, lattice, cfg).make();
}

void check_net(const Net& net, std::size_t instance, std::size_t max_depth,
               HarnessReport& report) {
  const ExploreGraph g = explore(net, max_depth);
  if (g.exhausted) ++report.exhausted;
  const Lattice& lat = *net.lattice;
  auto record = [&](std::string lemma, Trace trace, Four decision,
                    std::vector<Violation> vs, std::string detail) {
    Counterexample c;
    c.lemma = std::move(lemma);
    c.instance = instance;
    c.scenario = render(net);
    c.trace = std::move(trace);
    c.decision = decision;
    c.violations = std::move(vs);
    c.detail = std::move(detail);
    report.counterexamples.push_back(std::move(c));
  };

  for (std::size_t i = 0; i < g.states.size(); ++i) {
    ++report.states;
    const Net& state = g.states[i];
    const Trace prefix = g.trace_to(i);
    const GlobalState gs = state_from_trace(prefix, prefix.events.size());

    for (const auto& item : state.items) {
      ++report.history_checks;
      const auto it = gs.fH.find(item.uid);
      if (it == gs.fH.end() || it->second != item.annot.state.history) {
        ++report.history_failures;
        record("history", prefix, Four::Bottom, {},
               item.name + "#" + std::to_string(item.uid) + ": engine " +
                   lat.name(item.annot.state.history) + ", oracle " +
                   (it == gs.fH.end() ? std::string("missing") : lat.name(it->second)));
      }
    }

    for (const auto& r : enumerate_redexes(state)) {
      auto [after, ev] = apply(state, r, ApplyOptions{true});
      if (!ev.enabled) {
        ++report.not_enabled;
        continue;
      }
      ++report.interactions;
      ev.step = prefix.events.size();
      GlobalState hyp = gs;
      append_event(hyp, ev);
      const SecurityVerdict verdict = oracle_check(hyp);
      const bool denied = !grant(ev.decision);
      report.denied += denied;
      report.insecure += !verdict.secure;
      if (denied == !verdict.secure) continue;
      Trace t = prefix;
      t.events.push_back(ev);
      t.final = std::move(after);
      if (!verdict.secure) {
        ++report.lemma1_failures;
        record("lemma1", std::move(t), ev.decision, verdict.violations,
               "insecure interaction " + ev.redex + " was granted");
      } else {
        ++report.lemma2_failures;
        record("lemma2", std::move(t), ev.decision, {},
               "interaction " + ev.redex + " was denied but keeps the state secure");
      }
    }
  }
}

HarnessReport lemma_harness(const HarnessConfig& cfg) {
  HarnessReport report;
  const LatticePtr lat = harness_lattice(cfg.lattice);
  std::mt19937_64 seeds(cfg.seed);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const Net net = random_net(seeds(), lat, cfg);
    check_net(net, i, cfg.max_depth, report);
    ++report.instances;
  }
  return report;
}

std::string HarnessReport::to_text() const {
  std::ostringstream os;
  os << "instances: " << instances << "\n"
     << "states: " << states << "\n"
     << "interactions: " << interactions << " (denied " << denied << ", insecure "
     << insecure << ", not enabled " << not_enabled << ")\n"
     << "history checks: " << history_checks << "\n"
     << "lemma 1 (insecure => denied): " << (lemma1_failures ? "FAIL" : "pass") << " ("
     << lemma1_failures << " counterexamples)\n"
     << "lemma 2 (denied => insecure): " << (lemma2_failures ? "FAIL" : "pass") << " ("
     << lemma2_failures << " counterexamples)\n"
     << "history agreement: " << (history_failures ? "FAIL" : "pass") << " ("
     << history_failures << " mismatches)\n"
     << "depth-bounded explorations: " << exhausted << "\n";
  for (std::size_t k = 0; k < counterexamples.size(); ++k) {
    const auto& c = counterexamples[k];
    os << "\ncounterexample " << k + 1 << " [" << c.lemma << "] instance " << c.instance
       << ": " << c.detail << "\n  decision: " << to_string(c.decision) << "\n"
       << violations_text(c.violations) << "  scenario:\n";
    std::istringstream scen(c.scenario);
    for (std::string line; std::getline(scen, line);) os << "    " << line << "\n";
    os << "  trace:\n";
    std::ostringstream tr;
    write_trace(tr, c.trace, TraceFormat::Text);
    std::istringstream lines(tr.str());
    for (std::string line; std::getline(lines, line);) os << "    " << line << "\n";
  }
  return os.str();
}

}  // namespace akb
