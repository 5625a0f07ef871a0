#include "dcgame/io.hpp"

#include <algorithm>
#include <set>

#include "dcgame/errors.hpp"

namespace dcgame {

namespace {

Alphabet alphabet_from_json(const json& j) {
    std::vector<std::string> symbols;
    for (const auto& s : j) symbols.push_back(s.get<std::string>());
    return Alphabet(std::move(symbols));
}

std::vector<std::vector<double>> sorted_normals(const Cell& c) {
    std::vector<std::vector<double>> rows;
    for (const auto& p : c.normals) rows.push_back(p.weights());
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace

json cone_to_json(const DCCone& a) {
    json j;
    j["alphabet"] = a.alphabet().symbols();
    std::vector<std::vector<std::vector<double>>> cells;
    for (const auto& c : a.cells()) cells.push_back(sorted_normals(c));
    std::sort(cells.begin(), cells.end());
    j["cells"] = json::array();
    for (const auto& c : cells) j["cells"].push_back(json{{"normals", c}});
    return j;
}

DCCone cone_from_json(const json& j) {
    Alphabet a = alphabet_from_json(j.at("alphabet"));
    std::vector<Cell> cells;
    for (const auto& jc : j.at("cells")) {
        Cell c;
        for (const auto& jn : jc.at("normals"))
            c.normals.push_back(Normal(jn.get<std::vector<double>>()));
        cells.push_back(std::move(c));
    }
    return DCCone(std::move(a), std::move(cells));
}

json channel_to_json(const GameChannel& w) {
    json cones = json::object();
    for (int x = 0; x < w.inputs.size(); ++x)
        cones[w.inputs.symbol(x)] = cone_to_json(w.at(x));
    return json{{"kind", "explicit"}, {"inputs", w.inputs.symbols()}, {"cones", std::move(cones)}};
}

GameChannel channel_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "explicit") {
        Alphabet inputs = alphabet_from_json(j.at("inputs"));
        std::vector<DCCone> cones;
        for (const auto& s : inputs.symbols()) cones.push_back(cone_from_json(j.at("cones").at(s)));
        return GameChannel(std::move(inputs), std::move(cones));
    }
    static const std::set<std::string> kinds{"bsc",         "erasure",
                                             "dmc",         "dmc_feedback",
                                             "adversarial", "adversarial_feedback",
                                             "avcf"};
    if (!kinds.count(kind)) throw InputError("unknown channel kind: " + kind);
    const json& p = j.at("params");
    if (kind == "bsc") return bsc_channel(p.at("beta").get<double>());
    if (kind == "erasure") return erasure_channel(p.at("p").get<double>());
    if (kind == "dmc" || kind == "dmc_feedback") {
        DMCKernel k(alphabet_from_json(p.at("inputs")), alphabet_from_json(p.at("outputs")),
                    p.at("rows").get<std::vector<std::vector<double>>>());
        return kind == "dmc" ? channel_from_dmc(k) : channel_from_dmc_feedback(k);
    }
    if (kind == "adversarial" || kind == "adversarial_feedback") {
        Alphabet in = alphabet_from_json(p.at("inputs"));
        Alphabet out = alphabet_from_json(p.at("outputs"));
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : p.at("edges"))
            edges.emplace_back(in.index_of(e.at(0).get<std::string>()),
                               out.index_of(e.at(1).get<std::string>()));
        BipartiteGraph g(std::move(in), std::move(out), std::move(edges));
        return kind == "adversarial" ? channel_from_graph(g) : channel_from_graph_feedback(g);
    }
    if (kind == "avcf") {
        AVCFKernel k(alphabet_from_json(p.at("x")), alphabet_from_json(p.at("z")),
                     alphabet_from_json(p.at("v")), alphabet_from_json(p.at("y")),
                     p.at("kernel").get<std::vector<double>>());
        return channel_from_avcf(k);
    }
    throw InputError("unknown channel kind: " + kind);
}

json strategy_to_json(const TeamStrategy& st) {
    st.validate();
    json codebook = json::object();
    for (int m = 0; m < st.L; ++m) {
        json word = json::array();
        for (int x : st.codebook[static_cast<size_t>(m)]) word.push_back(st.inputs.symbol(x));
        codebook[std::to_string(m)] = std::move(word);
    }
    json policy = json::object();
    for (int m = 0; m < st.L; ++m) {
        std::uint64_t prefixes = 1;
        for (int i = 0; i < st.n; ++i) {
            for (std::uint64_t r = 0; r < prefixes; ++r) {
                const std::vector<int> seq = unrank_sequence(r, i, st.outputs.size());
                const std::string key = std::to_string(m) + "|" + sequence_label(seq, st.outputs);
                std::span<const double> w = st.portfolio(m, i, r);
                policy[key] = std::vector<double>(w.begin(), w.end());
            }
            prefixes *= static_cast<std::uint64_t>(st.outputs.size());
        }
    }
    json decoder = json::object();
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(st.outputs.size()), st.n);
    for (std::uint64_t r = 0; r < leaves; ++r) {
        const std::vector<int> seq = unrank_sequence(r, st.n, st.outputs.size());
        decoder[sequence_label(seq, st.outputs)] = st.decoder[static_cast<size_t>(r)];
    }
    return json{{"n", st.n},
                {"L", st.L},
                {"inputs", st.inputs.symbols()},
                {"outputs", st.outputs.symbols()},
                {"codebook", std::move(codebook)},
                {"policy", std::move(policy)},
                {"decoder", std::move(decoder)}};
}

TeamStrategy strategy_from_json(const json& j) {
    TeamStrategy st;
    st.n = j.at("n").get<int>();
    st.L = j.at("L").get<int>();
    st.inputs = alphabet_from_json(j.at("inputs"));
    st.outputs = alphabet_from_json(j.at("outputs"));
    st.codebook.resize(static_cast<size_t>(st.L));
    for (int m = 0; m < st.L; ++m) {
        const json& word = j.at("codebook").at(std::to_string(m));
        for (const auto& s : word)
            st.codebook[static_cast<size_t>(m)].push_back(st.inputs.index_of(s.get<std::string>()));
    }
    const int ny = st.outputs.size();
    st.policy.resize(static_cast<size_t>(st.L));
    for (int m = 0; m < st.L; ++m) {
        auto& levels = st.policy[static_cast<size_t>(m)];
        levels.resize(static_cast<size_t>(st.n));
        std::uint64_t prefixes = 1;
        for (int i = 0; i < st.n; ++i) {
            levels[static_cast<size_t>(i)].resize(prefixes * static_cast<std::uint64_t>(ny));
            for (std::uint64_t r = 0; r < prefixes; ++r) {
                const std::vector<int> seq = unrank_sequence(r, i, ny);
                const std::string key = std::to_string(m) + "|" + sequence_label(seq, st.outputs);
                const auto w = j.at("policy").at(key).get<std::vector<double>>();
                if (static_cast<int>(w.size()) != ny) throw InputError("policy row length mismatch");
                std::copy(w.begin(), w.end(),
                          levels[static_cast<size_t>(i)].begin() +
                              static_cast<long>(r * static_cast<std::uint64_t>(ny)));
            }
            prefixes *= static_cast<std::uint64_t>(ny);
        }
    }
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(ny), st.n);
    st.decoder.resize(leaves);
    for (std::uint64_t r = 0; r < leaves; ++r) {
        const std::vector<int> seq = unrank_sequence(r, st.n, ny);
        st.decoder[static_cast<size_t>(r)] =
            j.at("decoder").at(sequence_label(seq, st.outputs)).get<int>();
    }
    st.validate();
    return st;
}

json gamespec_to_json(const GameSpec& spec) {
    return json{{"channel", channel_to_json(spec.channel)},
                {"n", spec.n},
                {"L", spec.L},
                {"eps", spec.eps},
                {"prefix_rule", spec.prefix_rule}};
}

GameSpec gamespec_from_json(const json& j) {
    GameSpec spec;
    spec.channel = channel_from_json(j.at("channel"));
    spec.n = j.at("n").get<int>();
    spec.L = j.at("L").get<int>();
    spec.eps = j.at("eps").get<double>();
    spec.prefix_rule = j.value("prefix_rule", false);
    return spec;
}

namespace {

const char* model_name(CodingScheme::Model m) {
    switch (m) {
        case CodingScheme::Model::Dmc: return "dmc";
        case CodingScheme::Model::DmcFeedback: return "dmc_feedback";
        case CodingScheme::Model::Avcf: return "avcf";
        case CodingScheme::Model::ZeroError: return "zero_error";
        case CodingScheme::Model::ZeroErrorFeedback: return "zero_error_feedback";
    }
    throw InputError("unknown scheme model");
}

CodingScheme::Model model_from_name(const std::string& s) {
    if (s == "dmc") return CodingScheme::Model::Dmc;
    if (s == "dmc_feedback") return CodingScheme::Model::DmcFeedback;
    if (s == "avcf") return CodingScheme::Model::Avcf;
    if (s == "zero_error") return CodingScheme::Model::ZeroError;
    if (s == "zero_error_feedback") return CodingScheme::Model::ZeroErrorFeedback;
    throw InputError("unknown scheme model: " + s);
}

}  // namespace

json scheme_to_json(const CodingScheme& scheme) {
    json codewords = json::object();
    for (int m = 0; m < scheme.L; ++m) {
        json word = json::array();
        for (int x : scheme.codewords[static_cast<size_t>(m)]) word.push_back(scheme.x.symbol(x));
        codewords[std::to_string(m)] = std::move(word);
    }
    json decoder = json::object();
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(scheme.y.size()), scheme.n);
    for (std::uint64_t r = 0; r < leaves; ++r) {
        const std::vector<int> seq = unrank_sequence(r, scheme.n, scheme.y.size());
        decoder[sequence_label(seq, scheme.y)] = scheme.decoder[static_cast<size_t>(r)];
    }
    json out{{"model", model_name(scheme.model)},
             {"n", scheme.n},
             {"L", scheme.L},
             {"x", scheme.x.symbols()},
             {"y", scheme.y.symbols()},
             {"codewords", std::move(codewords)},
             {"decoder", std::move(decoder)}};
    if (scheme.has_causal()) {
        json causal = json::object();
        for (int m = 0; m < scheme.L; ++m) {
            std::uint64_t prefixes = 1;
            for (int i = 0; i < scheme.n; ++i) {
                for (std::uint64_t r = 0; r < prefixes; ++r) {
                    const std::vector<int> seq = unrank_sequence(r, i, scheme.y.size());
                    causal[std::to_string(m) + "|" + sequence_label(seq, scheme.y)] =
                        scheme.causal[static_cast<size_t>(m)][static_cast<size_t>(i)]
                                     [static_cast<size_t>(r)];
                }
                prefixes *= static_cast<std::uint64_t>(scheme.y.size());
            }
        }
        out["causal"] = std::move(causal);
    }
    return out;
}

CodingScheme scheme_from_json(const json& j) {
    CodingScheme scheme;
    scheme.model = model_from_name(j.at("model").get<std::string>());
    scheme.n = j.at("n").get<int>();
    scheme.L = j.at("L").get<int>();
    scheme.x = alphabet_from_json(j.at("x"));
    scheme.y = alphabet_from_json(j.at("y"));
    scheme.codewords.resize(static_cast<size_t>(scheme.L));
    for (int m = 0; m < scheme.L; ++m)
        for (const auto& s : j.at("codewords").at(std::to_string(m)))
            scheme.codewords[static_cast<size_t>(m)].push_back(scheme.x.index_of(s.get<std::string>()));
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(scheme.y.size()), scheme.n);
    scheme.decoder.resize(leaves);
    for (std::uint64_t r = 0; r < leaves; ++r) {
        const std::vector<int> seq = unrank_sequence(r, scheme.n, scheme.y.size());
        scheme.decoder[static_cast<size_t>(r)] =
            j.at("decoder").at(sequence_label(seq, scheme.y)).get<int>();
    }
    if (j.contains("causal")) {
        scheme.causal.resize(static_cast<size_t>(scheme.L));
        for (int m = 0; m < scheme.L; ++m) {
            auto& levels = scheme.causal[static_cast<size_t>(m)];
            levels.resize(static_cast<size_t>(scheme.n));
            std::uint64_t prefixes = 1;
            for (int i = 0; i < scheme.n; ++i) {
                levels[static_cast<size_t>(i)].resize(prefixes);
                for (std::uint64_t r = 0; r < prefixes; ++r) {
                    const std::vector<int> seq = unrank_sequence(r, i, scheme.y.size());
                    levels[static_cast<size_t>(i)][static_cast<size_t>(r)] =
                        j.at("causal")
                            .at(std::to_string(m) + "|" + sequence_label(seq, scheme.y))
                            .get<int>();
                }
                prefixes *= static_cast<std::uint64_t>(scheme.y.size());
            }
        }
    }
    return scheme;
}

json source_strategy_to_json(const SourceStrategy& st) {
    st.validate();
    json policy = json::object();
    std::uint64_t prefixes = 1;
    for (int i = 0; i < st.n; ++i) {
        for (std::uint64_t r = 0; r < prefixes; ++r) {
            const std::vector<int> seq = unrank_sequence(r, i, st.source.size());
            std::span<const double> w = st.portfolio(i, r);
            policy[sequence_label(seq, st.source)] = std::vector<double>(w.begin(), w.end());
        }
        prefixes *= static_cast<std::uint64_t>(st.source.size());
    }
    json encoder = json::object();
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(st.source.size()), st.n);
    for (std::uint64_t r = 0; r < leaves; ++r) {
        const std::vector<int> seq = unrank_sequence(r, st.n, st.source.size());
        encoder[sequence_label(seq, st.source)] = st.encoder[static_cast<size_t>(r)];
    }
    json decoder = json::array();
    for (const auto& seq : st.decoder) {
        json word = json::array();
        for (int x : seq) word.push_back(st.source.symbol(x));
        decoder.push_back(std::move(word));
    }
    return json{{"n", st.n},
                {"L", st.L},
                {"source", st.source.symbols()},
                {"policy", std::move(policy)},
                {"encoder", std::move(encoder)},
                {"decoder", std::move(decoder)}};
}

SourceStrategy source_strategy_from_json(const json& j) {
    SourceStrategy st;
    st.n = j.at("n").get<int>();
    st.L = j.at("L").get<int>();
    st.source = alphabet_from_json(j.at("source"));
    const int nx = st.source.size();
    st.policy.resize(static_cast<size_t>(st.n));
    std::uint64_t prefixes = 1;
    for (int i = 0; i < st.n; ++i) {
        st.policy[static_cast<size_t>(i)].resize(prefixes * static_cast<std::uint64_t>(nx));
        for (std::uint64_t r = 0; r < prefixes; ++r) {
            const std::vector<int> seq = unrank_sequence(r, i, nx);
            const auto w =
                j.at("policy").at(sequence_label(seq, st.source)).get<std::vector<double>>();
            if (static_cast<int>(w.size()) != nx) throw InputError("policy row length mismatch");
            std::copy(w.begin(), w.end(),
                      st.policy[static_cast<size_t>(i)].begin() +
                          static_cast<long>(r * static_cast<std::uint64_t>(nx)));
        }
        prefixes *= static_cast<std::uint64_t>(nx);
    }
    const std::uint64_t leaves = checked_pow(static_cast<std::uint64_t>(nx), st.n);
    st.encoder.resize(leaves);
    for (std::uint64_t r = 0; r < leaves; ++r) {
        const std::vector<int> seq = unrank_sequence(r, st.n, nx);
        st.encoder[static_cast<size_t>(r)] =
            j.at("encoder").at(sequence_label(seq, st.source)).get<int>();
    }
    for (const auto& word : j.at("decoder")) {
        std::vector<int> seq;
        for (const auto& s : word) seq.push_back(st.source.index_of(s.get<std::string>()));
        st.decoder.push_back(std::move(seq));
    }
    st.validate();
    return st;
}

json verify_report_to_json(const VerifyReport& rep) {
    json violations = json::array();
    for (const auto& v : rep.violations)
        violations.push_back(json{{"message", v.message},
                                  {"step", v.step},
                                  {"prefix", v.prefix},
                                  {"detail", v.detail}});
    return json{{"win", rep.win},
                {"min_payoff", rep.min_payoff},
                {"worst_message", rep.worst_message},
                {"worst_path", rep.worst_path},
                {"prefix_breach", rep.prefix_breach},
                {"violations", std::move(violations)},
                {"nodes", rep.nodes}};
}

}  // namespace dcgame
