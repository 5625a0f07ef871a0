#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dcgame/capacity.hpp"
#include "dcgame/channels.hpp"
#include "dcgame/cone.hpp"
#include "dcgame/errors.hpp"
#include "dcgame/games.hpp"
#include "dcgame/io.hpp"
#include "dcgame/source_games.hpp"

namespace py = pybind11;
using namespace dcgame;

namespace {

CapacityMethod method_from_name(const std::string& s) {
    if (s == "auto") return CapacityMethod::Auto;
    if (s == "blahut_arimoto" || s == "ba") return CapacityMethod::BlahutArimoto;
    if (s == "minimax") return CapacityMethod::Minimax;
    if (s == "oracle_grid" || s == "grid") return CapacityMethod::OracleGrid;
    throw InputError("unknown capacity method: " + s);
}

StrategyKind kind_from_name(const std::string& s) {
    if (s == "martingale") return StrategyKind::Martingale;
    if (s == "zero_error") return StrategyKind::ZeroError;
    if (s == "zero_error_feedback") return StrategyKind::ZeroErrorFeedback;
    throw InputError("unknown strategy kind: " + s);
}

CodingScheme::Model model_from_name(const std::string& s) {
    if (s == "dmc") return CodingScheme::Model::Dmc;
    if (s == "dmc_feedback") return CodingScheme::Model::DmcFeedback;
    if (s == "avcf") return CodingScheme::Model::Avcf;
    if (s == "zero_error") return CodingScheme::Model::ZeroError;
    if (s == "zero_error_feedback") return CodingScheme::Model::ZeroErrorFeedback;
    throw InputError("unknown scheme model: " + s);
}

py::dict report_dict(const VerifyReport& rep) {
    py::dict d;
    d["win"] = rep.win;
    d["min_payoff"] = rep.min_payoff;
    d["worst_message"] = rep.worst_message;
    d["worst_path"] = rep.worst_path;
    d["prefix_breach"] = rep.prefix_breach;
    d["nodes"] = rep.nodes;
    py::list viols;
    for (const auto& v : rep.violations) {
        py::dict vd;
        vd["message"] = v.message;
        vd["step"] = v.step;
        vd["prefix"] = v.prefix;
        vd["detail"] = v.detail;
        viols.append(vd);
    }
    d["violations"] = viols;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "pricing DC cone calculus and deterministic coding games";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);
    py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
    py::register_exception<SynthesisError>(m, "SynthesisError", PyExc_RuntimeError);
    py::register_exception<DualityViolation>(m, "DualityViolation", PyExc_RuntimeError);

    py::class_<Alphabet>(m, "Alphabet")
        .def(py::init<std::vector<std::string>>())
        .def_static("integers", &Alphabet::integers)
        .def("symbols", &Alphabet::symbols)
        .def("__len__", &Alphabet::size)
        .def("__eq__", [](const Alphabet& a, const Alphabet& b) { return a == b; })
        .def("__repr__", [](const Alphabet& a) {
            std::string out = "Alphabet([";
            for (int i = 0; i < a.size(); ++i) out += (i ? ", '" : "'") + a.symbol(i) + "'";
            return out + "])";
        });

    py::class_<DCCone>(m, "DCCone")
        .def_static("empty", &DCCone::empty)
        .def_static("full", &DCCone::full)
        .def_static("halfspace",
                    [](const Alphabet& a, const std::vector<double>& p) {
                        return DCCone::halfspace(a, Normal(p));
                    })
        .def_static("nonpositive", &DCCone::nonpositive)
        .def_static("noiseless", &DCCone::noiseless)
        .def_static("adversarial_cell", &DCCone::adversarial_cell)
        .def_static("from_generators",
                    [](const Alphabet& a, const std::vector<std::vector<double>>& gens) {
                        std::vector<Portfolio> ps;
                        for (const auto& gv : gens) ps.emplace_back(a, gv);
                        return DCCone::from_generators(a, ps);
                    })
        .def_static("from_cells",
                    [](const Alphabet& a, const std::vector<std::vector<std::vector<double>>>& cells) {
                        std::vector<Cell> cs;
                        for (const auto& cell : cells) {
                            Cell c;
                            for (const auto& n : cell) c.normals.push_back(Normal(n));
                            cs.push_back(std::move(c));
                        }
                        return DCCone(a, std::move(cs));
                    })
        .def_property_readonly("alphabet", &DCCone::alphabet)
        .def("cells",
             [](const DCCone& a) {
                 std::vector<std::vector<std::vector<double>>> out;
                 for (const auto& c : a.cells()) {
                     std::vector<std::vector<double>> cell;
                     for (const auto& n : c.normals) cell.push_back(n.weights());
                     out.push_back(std::move(cell));
                 }
                 return out;
             })
        .def("is_empty", &DCCone::is_empty_cone)
        .def("has_full_cell", &DCCone::has_full_cell)
        .def("contains",
             [](const DCCone& a, const std::vector<double>& s, double tol) {
                 return contains_portfolio(a, Portfolio(a.alphabet(), s), tol);
             },
             py::arg("portfolio"), py::arg("tol") = 1e-9)
        .def("to_json", [](const DCCone& a) { return cone_to_json(a).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return cone_from_json(json::parse(s)); })
        .def("__repr__", [](const DCCone& a) {
            return "DCCone(|Y|=" + std::to_string(a.alphabet().size()) +
                   ", cells=" + std::to_string(a.cells().size()) + ")";
        });

    m.def("unite", &unite);
    m.def("intersect", &intersect);
    m.def("disjoint_sum", &disjoint_sum);
    m.def("dual", &dual, py::arg("cone"), py::arg("tol") = 1e-9);
    m.def("prune", &prune, py::arg("cone"), py::arg("tol") = 1e-9);
    m.def("minplus", &minplus);
    m.def("robustify", &robustify);
    m.def("pushforward",
          [](const DCCone& a, const std::vector<std::string>& targets,
             const std::vector<int>& image) {
              return pushforward(a, SymbolMap(a.alphabet(), Alphabet(targets), image));
          });
    m.def("semidirect", py::overload_cast<const DCCone&, const DCCone&>(&semidirect_explicit));
    m.def("member_product",
          [](const DCCone& a, const DCCone& b, const std::vector<double>& s, double tol) {
              return member_product(a, b, Portfolio(Alphabet::tuple(a.alphabet(), b.alphabet()), s),
                                    {tol});
          },
          py::arg("a"), py::arg("b"), py::arg("s"), py::arg("tol") = 1e-9);
    m.def("member_semidirect",
          [](const DCCone& a, const DCCone& b, const std::vector<double>& s, double tol) {
              return member_semidirect(a, b,
                                       Portfolio(Alphabet::tuple(a.alphabet(), b.alphabet()), s),
                                       {tol});
          },
          py::arg("a"), py::arg("b"), py::arg("s"), py::arg("tol") = 1e-9);
    m.def("contains_cone",
          [](const DCCone& a, const DCCone& b, double tol) {
              ContainsResult r = contains_cone(a, b, tol);
              py::dict d;
              d["contained"] = r.contained;
              d["max_margin"] = r.max_margin;
              if (r.witness) d["witness"] = r.witness->payoffs;
              return d;
          },
          py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);
    m.def("equals_cone", &equals_cone, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);
    m.def("is_informative", &is_informative, py::arg("cone"), py::arg("tol") = 1e-9);
    m.def("deterministically_degraded",
          py::overload_cast<const DCCone&, const DCCone&, double, std::uint64_t>(
              &deterministically_degraded),
          py::arg("b"), py::arg("a"), py::arg("tol") = 1e-9,
          py::arg("enumeration_cap") = 2'000'000);
    m.def("channel_degraded",
          py::overload_cast<const GameChannel&, const GameChannel&, double, std::uint64_t>(
              &deterministically_degraded),
          py::arg("w"), py::arg("v"), py::arg("tol") = 1e-9,
          py::arg("enumeration_cap") = 2'000'000);

    m.def("info_capacity",
          [](const DCCone& a, const std::string& method, double tol) {
              CapacityResult r = info_capacity(a, method_from_name(method), tol);
              py::dict d;
              d["value"] = r.value;
              d["method"] = r.method;
              d["iterations"] = r.iterations;
              if (r.is_finite()) d["prior"] = r.prior.weights();
              return d;
          },
          py::arg("cone"), py::arg("method") = "auto", py::arg("tol") = 1e-4);
    m.def("requirement_value", &requirement_value);
    m.def("binary_entropy", &binary_entropy);

    py::class_<GameChannel>(m, "GameChannel")
        .def_property_readonly("inputs", [](const GameChannel& w) { return w.inputs; })
        .def("cone", &GameChannel::at, py::return_value_policy::copy)
        .def("range_cone", &GameChannel::range_cone)
        .def("to_json", [](const GameChannel& w) { return channel_to_json(w).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return channel_from_json(json::parse(s)); });

    m.def("bsc_channel", &bsc_channel);
    m.def("bsc_feedback_channel", &bsc_feedback_channel);
    m.def("erasure_channel", &erasure_channel);
    m.def("requirement_cone", &requirement_cone);
    m.def("dual_channel", &dual_channel, py::arg("channel"), py::arg("tol") = 1e-9);
    m.def("n_use_cone",
          [](const GameChannel& w, int n, const std::string& mode, std::uint64_t cap) {
              return n_use_cone(w, n, mode == "fixed" ? NUseMode::FixedInput : NUseMode::AllInputs,
                                nullptr, cap);
          },
          py::arg("channel"), py::arg("n"), py::arg("mode") = "all",
          py::arg("cap") = 10'000'000);

    py::class_<DMCKernel>(m, "DMCKernel")
        .def(py::init<Alphabet, Alphabet, std::vector<std::vector<double>>>());
    m.def("bsc_kernel", &bsc_kernel);

    py::class_<BipartiteGraph>(m, "BipartiteGraph")
        .def(py::init<Alphabet, Alphabet, std::vector<std::pair<int, int>>>())
        .def("outputs_of", &BipartiteGraph::outputs_of);
    m.def("cycle_confusability_graph", &cycle_confusability_graph);
    m.def("typewriter_graph", &typewriter_graph);
    m.def("channel_from_graph", &channel_from_graph);
    m.def("channel_from_graph_feedback", &channel_from_graph_feedback);
    m.def("channel_from_dmc", &channel_from_dmc);
    m.def("channel_from_dmc_feedback", &channel_from_dmc_feedback);

    py::class_<CodingScheme>(m, "CodingScheme")
        .def(py::init([](const std::string& model, int n, int L, const Alphabet& x,
                         const Alphabet& y, std::vector<std::vector<int>> codewords,
                         std::vector<int> decoder) {
                 CodingScheme s;
                 s.model = model_from_name(model);
                 s.n = n;
                 s.L = L;
                 s.x = x;
                 s.y = y;
                 s.codewords = std::move(codewords);
                 s.decoder = std::move(decoder);
                 return s;
             }),
             py::arg("model"), py::arg("n"), py::arg("L"), py::arg("x"), py::arg("y"),
             py::arg("codewords"), py::arg("decoder"))
        .def("to_json", [](const CodingScheme& s) { return scheme_to_json(s).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return scheme_from_json(json::parse(s)); });

    py::class_<TeamStrategy>(m, "TeamStrategy")
        .def("to_json", [](const TeamStrategy& st) { return strategy_to_json(st).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return strategy_from_json(json::parse(s)); });

    m.def("worst_case_error",
          [](const CodingScheme& scheme, const DMCKernel& kernel) {
              WorstCaseResult r = worst_case_error(scheme, kernel);
              return py::make_tuple(r.epsilon_star, r.table.values);
          });
    m.def("synthesize_strategy",
          [](const std::string& kind, const CodingScheme& scheme, const DMCKernel& kernel,
             double tol) {
              return synthesize_strategy(kind_from_name(kind), scheme, kernel, tol);
          },
          py::arg("kind"), py::arg("scheme"), py::arg("kernel"), py::arg("tol") = 1e-9);
    m.def("synthesize_graph_strategy",
          [](const std::string& kind, const CodingScheme& scheme, const BipartiteGraph& graph,
             double tol) {
              return synthesize_strategy(kind_from_name(kind), scheme, graph, tol);
          },
          py::arg("kind"), py::arg("scheme"), py::arg("graph"), py::arg("tol") = 1e-9);
    m.def("verify_game",
          [](const GameChannel& channel, int n, int L, double eps, const TeamStrategy& st,
             bool prefix_rule, double tol, std::uint64_t node_cap) {
              GameSpec spec{channel, n, L, eps, prefix_rule, node_cap};
              return report_dict(verify_game(spec, st, tol));
          },
          py::arg("channel"), py::arg("n"), py::arg("L"), py::arg("eps"), py::arg("strategy"),
          py::arg("prefix_rule") = false, py::arg("tol") = 1e-9,
          py::arg("node_cap") = 10'000'000);
    m.def("check_zero_error_code", &check_zero_error_code, py::arg("codewords"),
          py::arg("decoder"), py::arg("graph"), py::arg("n"), py::arg("L"),
          py::arg("node_cap") = 10'000'000);
    m.def("coding_feasible_by_degradedness", &coding_feasible_by_degradedness, py::arg("channel"),
          py::arg("n"), py::arg("L"), py::arg("eps"), py::arg("tol") = 1e-9,
          py::arg("enumeration_cap") = 2'000'000);

    py::class_<MailResult>(m, "MailResult")
        .def_readonly("n", &MailResult::n)
        .def_readonly("k", &MailResult::k)
        .def_readonly("p", &MailResult::p)
        .def_readonly("constant_loss", &MailResult::constant_loss)
        .def("channel", &MailResult::channel)
        .def("to_team_strategy", &MailResult::to_team_strategy, py::arg("cap") = 1u << 20);
    m.def("mail_insurance", &mail_insurance);
    m.def("verify_mail",
          [](const MailResult& mail, double tol, std::uint64_t cap) {
              MailSweep s = verify_mail(mail, tol, cap);
              py::dict d;
              d["constant"] = s.constant;
              d["min_payoff"] = s.min_payoff;
              d["max_payoff"] = s.max_payoff;
              d["max_deviation"] = s.max_deviation;
              d["paths"] = s.paths;
              return d;
          },
          py::arg("mail"), py::arg("tol") = 1e-9, py::arg("node_cap") = 10'000'000);

    py::class_<SourceStrategy>(m, "SourceStrategy")
        .def("to_json", [](const SourceStrategy& st) { return source_strategy_to_json(st).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return source_strategy_from_json(json::parse(s)); });

    m.def("synthesize_source_strategy",
          [](const std::vector<double>& p, const Alphabet& source,
             const std::vector<std::vector<int>>& codewords, int n, double tol) {
              SourceSynthesis syn = synthesize_source_strategy(Normal(p), source, codewords, n, tol);
              return py::make_tuple(syn.strategy, syn.error_probability);
          },
          py::arg("p"), py::arg("source"), py::arg("codewords"), py::arg("n"),
          py::arg("tol") = 1e-9);
    m.def("verify_source_game",
          [](const DCCone& cone, int n, int L, double eps, const SourceStrategy& st, double tol,
             std::uint64_t node_cap) {
              SourceGameSpec spec{cone, n, L, eps, node_cap};
              return report_dict(verify_source_game(spec, st, tol));
          },
          py::arg("cone"), py::arg("n"), py::arg("L"), py::arg("eps"), py::arg("strategy"),
          py::arg("tol") = 1e-9, py::arg("node_cap") = 10'000'000);
    m.def("entropy_halfspace", [](const DCCone& a) { return entropy_halfspace_closed_form(a).value; });
    m.def("entropy_generators",
          [](const Alphabet& a, const std::vector<std::vector<double>>& gens) {
              std::vector<Portfolio> ps;
              for (const auto& gv : gens) ps.emplace_back(a, gv);
              return entropy_generator_form(a, ps).value;
          });
    m.def("sanov_scheme",
          [](const std::vector<double>& a, double gamma, double eps, int n, int L,
             std::uint64_t cap) {
              Alphabet alpha = Alphabet::integers(static_cast<int>(a.size()));
              SanovScheme s = sanov_scheme(Portfolio(alpha, a), gamma, eps, n, L, cap);
              py::dict d;
              d["count"] = s.count;
              d["threshold"] = s.threshold;
              d["exponent"] = s.exponent;
              d["cardinality_bound"] = s.cardinality_bound;
              d["bound_ok"] = s.bound_ok;
              d["listed"] = s.listed;
              if (!s.listed.empty()) d["strategy"] = py::cast(s.strategy);
              return d;
          },
          py::arg("a"), py::arg("gamma"), py::arg("eps"), py::arg("n"), py::arg("L") = -1,
          py::arg("cap") = 2'000'000);
}
