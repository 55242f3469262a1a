#include <map>
#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "prime_race/errors.hpp"
#include "prime_race/explicit_formula.hpp"
#include "prime_race/prime_pairs.hpp"
#include "prime_race/races.hpp"
#include "prime_race/random_walk.hpp"
#include "prime_race/sieve.hpp"
#include "prime_race/special_functions.hpp"

namespace py = pybind11;
using namespace prime_race;

namespace {

sieve::SieveLimit sieve_limit(std::uint64_t limit, bool long_run) {
  return sieve::SieveLimit(limit, long_run ? sieve::LongRun::allowed : sieve::LongRun::forbidden);
}

std::vector<races::TeamSpec> to_teams(const std::vector<std::pair<std::string, std::vector<std::uint32_t>>>& teams) {
  std::vector<races::TeamSpec> out;
  for (const auto& [label, residues] : teams) out.push_back({label, residues});
  return out;
}

py::list residue_rows(const std::vector<sieve::ResidueCounts>& counts) {
  py::list rows;
  for (const auto& rc : counts) {
    py::dict by;
    for (const auto& [r, n] : rc.counts) by[py::int_(r)] = n;
    rows.append(py::make_tuple(rc.x, by));
  }
  return rows;
}

py::list event_rows(const std::vector<races::LeadChangeEvent>& events) {
  py::list out;
  for (const auto& e : events) out.append(py::make_tuple(e.x, e.previous_leader, e.new_leader));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prime number races: sieving, races, L-function zeros, explicit formulas and prime pairs";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_ArithmeticError);

  // sieve
  m.def("prime_pi", [](std::uint64_t limit, bool long_run) {
        py::gil_scoped_release release;
        return sieve::prime_pi(sieve_limit(limit, long_run));
      },
      py::arg("limit"), py::arg("long_run") = false);
  m.def("primes_up_to", [](std::uint64_t limit) {
        std::vector<std::uint64_t> out;
        sieve::enumerate_primes(sieve_limit(limit, false), {}, [&](std::uint64_t p) { out.push_back(p); });
        return out;
      },
      py::arg("limit"));
  m.def("count_in_progressions",
        [](std::uint64_t limit, std::uint32_t q, std::vector<std::uint64_t> checkpoints, unsigned workers,
           bool long_run) {
          std::vector<sieve::ResidueCounts> counts;
          {
            py::gil_scoped_release release;
            counts = sieve::count_in_progressions(sieve_limit(limit, long_run), q, checkpoints, {}, workers);
          }
          return residue_rows(counts);
        },
        py::arg("limit"), py::arg("q"), py::arg("checkpoints"), py::arg("workers") = 1, py::arg("long_run") = false,
        "[(x, {residue: count})] at each checkpoint");

  // races
  m.def("race_rows",
        [](std::uint32_t q, const std::vector<std::pair<std::string, std::vector<std::uint32_t>>>& teams,
           std::vector<std::uint64_t> checkpoints) {
          const auto t = to_teams(teams);
          const std::uint64_t limit = checkpoints.empty() ? 2 : checkpoints.back();
          const auto ledger = races::run_race(sieve::count_in_progressions(sieve_limit(limit, false), q, checkpoints), t);
          py::list rows;
          for (std::size_t i = 0; i < ledger.size(); ++i) {
            const auto r = ledger.row(i);
            rows.append(py::make_tuple(ledger.x(i), std::vector<std::uint64_t>(r.begin(), r.end())));
          }
          return rows;
        },
        py::arg("q"), py::arg("teams"), py::arg("checkpoints"), "[(x, [count per team])]");
  m.def("lead_changes",
        [](std::uint32_t q, const std::vector<std::pair<std::string, std::vector<std::uint32_t>>>& teams,
           std::uint64_t limit, const std::string& place, bool takeovers_only) {
          if (place != "first" && place != "last") throw DomainError("place must be first or last");
          const auto ledger = races::run_dense_race(sieve_limit(limit, false), q, to_teams(teams));
          auto events = races::detect_lead_changes(ledger, place == "first" ? races::Place::first : races::Place::last);
          if (takeovers_only) events = races::takeovers(events);
          return event_rows(events);
        },
        py::arg("q"), py::arg("teams"), py::arg("limit"), py::arg("place") = "first",
        py::arg("takeovers_only") = false, "[(x, previous, new)] with 'tie' for a tied state");
  m.def("leader_density",
        [](std::uint32_t q, const std::vector<std::pair<std::string, std::vector<std::uint32_t>>>& teams,
           const std::string& ahead, std::uint64_t X, const std::string& kind) {
          const auto ledger = races::run_dense_race(sieve_limit(X, false), q, to_teams(teams));
          return races::leader_density(ledger, races::team_ahead(ledger.team_index(ahead)), X,
                                       races::parse_density_kind(kind))
              .value;
        },
        py::arg("q"), py::arg("teams"), py::arg("ahead"), py::arg("X"), py::arg("kind") = "log");
  m.def("error_term",
        [](std::uint64_t x, std::uint32_t q, std::uint32_t a, std::uint64_t pi_x, std::uint64_t pi_x_q_a) {
          return races::error_term(x, q, a, pi_x, pi_x_q_a).value;
        },
        py::arg("x"), py::arg("q"), py::arg("a"), py::arg("pi_x"), py::arg("pi_x_q_a"));
  m.def("squares_mod", [](std::uint32_t q) {
    const auto c = races::squares_mod(q);
    return py::make_tuple(c.squares, c.nonsquares);
  });
  m.def("simulate_walk",
        [](std::uint32_t teams, std::uint64_t steps, std::uint64_t trials, std::uint64_t seed) {
          races::WalkConfig cfg{teams, steps, trials, seed};
          std::vector<std::optional<std::uint64_t>> out;
          for (const auto& t : races::simulate_tie_walk(cfg)) out.push_back(t.first_return_step);
          return out;
        },
        py::arg("teams") = 3, py::arg("steps") = 100000, py::arg("trials") = 200, py::arg("seed") = 0,
        "first return step of each trial, None when the walk never returned");

  // special functions
  m.def("li", [](double x) { return analytic::li(x); });
  m.def("li2", [](double x) { return analytic::li2(x); });
  m.def("riemann_prediction", [](double x) { return analytic::riemann_prediction(x); });
  m.def("chebyshev_psi", [](std::uint64_t x) { return analytic::chebyshev_psi(x); });
  m.def("evaluate_l",
        [](const std::string& lfunction, std::complex<double> s) {
          return analytic::evaluate_l(analytic::LFunctionId::parse(lfunction), s);
        },
        py::arg("lfunction"), py::arg("s"), "zeta, beta4 or quadratic:<q> at Re s > 0");
  m.def("critical_line_z",
        [](const std::string& lfunction, double t) {
          return analytic::critical_line_z(analytic::LFunctionId::parse(lfunction), t);
        },
        py::arg("lfunction"), py::arg("t"));
  m.def("find_zeros",
        [](const std::string& lfunction, double t_max) {
          return analytic::find_zeros(analytic::LFunctionId::parse(lfunction), t_max).ordinates;
        },
        py::arg("lfunction"), py::arg("t_max"));

  // explicit formula
  m.def("wave_sum",
        [](std::vector<double> ordinates, double x) { return 1.0 + 2.0 * wave::partial_wave_sum(ordinates, x); },
        py::arg("ordinates"), py::arg("x"));
  m.def("sawtooth_partial_sum", &wave::sawtooth_partial_sum, py::arg("x"), py::arg("n_waves"));
  m.def("ford_konyagin_profile",
        [](double sigma, double gamma, double x) {
          const wave::HypotheticalZero z{sigma, gamma};
          z.validate();
          return wave::ford_konyagin_profile(z, x);
        },
        py::arg("sigma"), py::arg("gamma"), py::arg("x"));

  // prime pairs
  m.def("count_pairs",
        [](std::uint64_t limit, std::vector<std::uint64_t> gaps, std::vector<std::uint64_t> checkpoints) {
          std::vector<pairs::GapSpec> g;
          for (auto v : gaps) g.push_back(pairs::GapSpec::of(v));
          std::map<std::uint32_t, std::vector<std::uint64_t>> out;
          for (const auto& pc : pairs::count_pairs(sieve_limit(limit, false), g, checkpoints)) out[pc.gap.gap] = pc.counts;
          return out;
        },
        py::arg("limit"), py::arg("gaps"), py::arg("checkpoints"), "{gap: [count at each checkpoint]}");
  m.def("twin_prime_constant", [] { return pairs::twin_prime_constants().c2; });
  m.def("hl_prediction", [](double x) { return pairs::hl_prediction(x); });
  m.def("singular_factor", &pairs::singular_factor);

  // command line
  m.def("cli_run",
        [](std::vector<std::string> args) {
          args.insert(args.begin(), "prime_races");
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "run the command-line tool in-process; returns (exit code, stdout, stderr)");
}
