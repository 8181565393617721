#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcb/cache.hpp"
#include "qcb/crystal.hpp"
#include "qcb/error.hpp"

namespace {

struct Options {
    std::string type = "A1";
    std::string config;
    std::string report_path;
    std::string cache_dir;
    std::uint64_t seed = 12345;
    bool timing = false;
    int verbosity = 0;

    std::string nu, word, x, y, xi, lam;
    std::string suite = "all";
    std::string scope = "all";
    int m = -1, n = -1, times = 1, max_tr = 4;
};

struct FileConfig {
    std::optional<qcb::CartanDatum> datum;
    std::map<std::string, std::vector<int>> weights;
};

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::string norm = text;
    for (auto& ch : norm)
        if (ch == ',') ch = ' ';
    std::istringstream sin(norm);
    while (sin >> item) {
        try {
            size_t used = 0;
            int val = std::stoi(item, &used);
            qcb::check(used == item.size(), "");
            out.push_back(val);
        } catch (const std::exception&) {
            throw qcb::error("expected an integer, got '" + item + "' in \"" + text + "\"");
        }
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

FileConfig parse_config(const std::string& path) {
    FileConfig fc;
    std::ifstream in(path);
    qcb::check(in.good(), "cannot open config file " + path);
    std::string line, section;
    std::vector<std::vector<int>> rows;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        if (section == "datum") {
            rows.push_back(parse_ints(line));
        } else if (section == "weights") {
            auto eq = line.find('=');
            qcb::check(eq != std::string::npos, "weights entries need name = values");
            fc.weights[trim(line.substr(0, eq))] = parse_ints(line.substr(eq + 1));
        } else {
            throw qcb::error("unknown config section [" + section + "]");
        }
    }
    if (!rows.empty()) {
        std::vector<std::string> names;
        for (size_t i = 0; i < rows.size(); ++i) names.push_back(std::to_string(i));
        fc.datum = qcb::CartanDatum::make(names, rows);
    }
    return fc;
}

qcb::CartanDatum datum_from(const Options& o, const FileConfig& fc) {
    if (fc.datum) return *fc.datum;
    if (o.type == "A1" || o.type == "a1") return qcb::CartanDatum::a1();
    if (o.type == "A2" || o.type == "a2") return qcb::CartanDatum::a2();
    throw qcb::error("unsupported type '" + o.type +
                     "': built-in data are A1 and A2 (use --config for others)");
}

std::vector<int> weight_vec(const FileConfig& fc, const std::string& text, int single,
                            size_t dsize, const std::string& what) {
    if (!text.empty()) {
        if (fc.weights.count(text)) return fc.weights.at(text);
        return parse_ints(text);
    }
    if (single >= 0) {
        qcb::check(dsize == 1, what + " given as a single integer needs a rank-1 datum");
        return {single};
    }
    throw qcb::error("missing " + what);
}

qcb::Weight make_weight(const FileConfig& fc, const std::string& text, int single,
                        const qcb::CartanDatum& d, const std::string& what) {
    auto v = weight_vec(fc, text, single, d.size(), what);
    qcb::check(v.size() == d.size(), what + " needs " + std::to_string(d.size()) + " entries");
    qcb::Weight w{v};
    qcb::check(w.dominant(), what + " must be dominant");
    return w;
}

std::string nv_str(const qcb::NodeVec& nu) {
    std::string s = "(";
    for (size_t i = 0; i < nu.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(nu[i]);
    }
    return s + ")";
}

void cache_in(const Options& o, qcb::FAlgebra& alg) {
    auto dir = qcb::resolve_cache_dir(o.cache_dir);
    if (dir.empty()) return;
    size_t n = qcb::cache_load(dir, alg, o.seed);
    if (o.verbosity > 0 && n) std::cerr << "cache: adopted " << n << " form values\n";
}

void cache_out(const Options& o, qcb::FAlgebra& alg) {
    auto dir = qcb::resolve_cache_dir(o.cache_dir);
    if (dir.empty()) return;
    qcb::cache_store(dir, alg);
}

std::string command_echo(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) s += " ";
        s += argv[i];
    }
    return s;
}

int finish_checks(const Options& o, const std::string& echo, const qcb::CartanDatum& d,
                  const qcb::Report& rep, std::chrono::steady_clock::time_point t0) {
    for (const auto& c : rep.checks()) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.pass && !c.witness.empty()) std::cout << " :: " << c.witness;
        std::cout << "\n";
    }
    std::cout << rep.summary_line() << "\n";
    if (!o.report_path.empty()) {
        nlohmann::json j = rep.to_json();
        j["command"] = echo;
        j["datum_fingerprint"] = d.fingerprint();
        j["seed"] = o.seed;
        if (o.timing) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            j["elapsed_ms"] = ms;
        }
        std::ofstream out(o.report_path);
        qcb::check(out.good(), "cannot write report to " + o.report_path);
        out << j.dump(1) << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

int finish_query(const Options& o, const std::string& echo, const qcb::CartanDatum& d,
                 const std::vector<std::string>& lines) {
    for (const auto& l : lines) std::cout << l << "\n";
    if (!o.report_path.empty()) {
        nlohmann::json j = {{"schema", "qcb-query-v1"},
                            {"version", qcb::kVersion},
                            {"command", echo},
                            {"datum_fingerprint", d.fingerprint()},
                            {"output", lines}};
        std::ofstream out(o.report_path);
        qcb::check(out.good(), "cannot write report to " + o.report_path);
        out << j.dump(1) << "\n";
    }
    return 0;
}

std::vector<std::string> datum_lines(const qcb::CartanDatum& d) {
    std::vector<std::string> lines;
    std::string head = "nodes:";
    for (size_t i = 0; i < d.size(); ++i) head += " " + d.name(static_cast<int>(i));
    lines.push_back(head);
    for (size_t i = 0; i < d.size(); ++i) {
        std::string row = d.name(static_cast<int>(i)) + ":";
        for (size_t j = 0; j < d.size(); ++j)
            row += " " + std::to_string(d.dot(static_cast<int>(i), static_cast<int>(j)));
        lines.push_back(row);
    }
    return lines;
}

qcb::FramedSetup::PositivityScope parse_scope(const std::string& s) {
    if (s == "tensor") return qcb::FramedSetup::PositivityScope::Tensor;
    if (s == "framed") return qcb::FramedSetup::PositivityScope::Framed;
    if (s == "all") return qcb::FramedSetup::PositivityScope::All;
    throw qcb::error("unknown scope '" + s + "' (tensor, framed, all)");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    std::string leaf;

    CLI::App app{"exact canonical-basis computations for framed tensor products"};
    app.require_subcommand(1);
    app.add_option("--config", o.config, "config file with [datum] rows and [weights] vectors");
    app.add_option("--report", o.report_path, "write a JSON report to this path");
    app.add_option("--cache-dir", o.cache_dir, "directory for persisted form tables");
    app.add_option("--seed", o.seed, "seed for cache validation and property suites");
    app.add_flag("--timing", o.timing,
                 "include elapsed time in the report (breaks byte-identical reports)");
    app.add_flag("-v,--verbose", o.verbosity, "more diagnostics on stderr");

    auto add_type = [&](CLI::App* c) { c->add_option("--type", o.type, "A1 or A2"); };
    auto add_mn = [&](CLI::App* c) {
        c->add_option("--m", o.m, "rank-1 weight <0,xi>");
        c->add_option("--n", o.n, "rank-1 weight <0,lam>");
        c->add_option("--xi", o.xi, "weight pairings, comma separated or a config name");
        c->add_option("--lam", o.lam, "weight pairings, comma separated or a config name");
    };
    auto set_leaf = [&](CLI::App* c, const std::string& name) {
        c->callback([&leaf, name] { leaf = name; });
    };

    auto* datum = app.add_subcommand("datum", "datum inspection");
    datum->require_subcommand(1);
    auto* datum_show = datum->add_subcommand("show", "print the pairing matrix");
    add_type(datum_show);
    set_leaf(datum_show, "datum show");
    auto* datum_frame = datum->add_subcommand("frame", "print the framed pairing matrix");
    add_type(datum_frame);
    datum_frame->add_option("--times", o.times, "how often to frame");
    set_leaf(datum_frame, "datum frame");

    auto* falg = app.add_subcommand("falg", "upper half algebra");
    falg->require_subcommand(1);
    auto* falg_dim = falg->add_subcommand("dim", "dimension of a weight space");
    add_type(falg_dim);
    falg_dim->add_option("--nu", o.nu, "weight, comma separated")->required();
    set_leaf(falg_dim, "falg dim");
    auto* falg_gram = falg->add_subcommand("gram", "word Gram matrix of a weight space");
    add_type(falg_gram);
    falg_gram->add_option("--nu", o.nu, "weight, comma separated")->required();
    set_leaf(falg_gram, "falg gram");
    auto* falg_serre = falg->add_subcommand("serre-check", "defining relations pair to zero");
    add_type(falg_serre);
    set_leaf(falg_serre, "falg serre-check");

    auto* cb = app.add_subcommand("cb", "canonical basis");
    cb->require_subcommand(1);
    auto* cb_listc = cb->add_subcommand("list", "basis elements of a weight space");
    add_type(cb_listc);
    cb_listc->add_option("--nu", o.nu, "weight, comma separated")->required();
    set_leaf(cb_listc, "cb list");
    auto* cb_expand = cb->add_subcommand("expand", "expand a word over the basis");
    add_type(cb_expand);
    cb_expand->add_option("--word", o.word, "word like 0(2).1(1)")->required();
    set_leaf(cb_expand, "cb expand");

    auto* module = app.add_subcommand("module", "highest weight module");
    module->require_subcommand(1);
    auto* module_form = module->add_subcommand("form", "admissible form of two carriers");
    add_type(module_form);
    add_mn(module_form);
    module_form->add_option("--x", o.x, "carrier word")->required();
    module_form->add_option("--y", o.y, "carrier word")->required();
    set_leaf(module_form, "module form");
    auto* module_weights = module->add_subcommand("weights", "weight spaces and dimensions");
    add_type(module_weights);
    add_mn(module_weights);
    set_leaf(module_weights, "module weights");

    auto* tensor = app.add_subcommand("tensor", "tensor product of two modules");
    tensor->require_subcommand(1);
    auto* tensor_diamond = tensor->add_subcommand("diamond", "bar-fixed basis table");
    add_type(tensor_diamond);
    add_mn(tensor_diamond);
    set_leaf(tensor_diamond, "tensor diamond");
    auto* tensor_theta = tensor->add_subcommand("theta", "quasi-R-matrix on pure tensors");
    add_type(tensor_theta);
    add_mn(tensor_theta);
    set_leaf(tensor_theta, "tensor theta");

    auto* framed = app.add_subcommand("framed", "framed construction");
    framed->require_subcommand(1);
    auto* framed_cb = framed->add_subcommand("verify-cb", "basis correspondence, base A1");
    add_type(framed_cb);
    add_mn(framed_cb);
    set_leaf(framed_cb, "framed verify-cb");
    auto* framed_pos = framed->add_subcommand("verify-positivity", "coefficient positivity");
    add_type(framed_pos);
    add_mn(framed_pos);
    framed_pos->add_option("--scope", o.scope, "tensor, framed, or all");
    set_leaf(framed_pos, "framed verify-positivity");
    auto* framed_pair = framed->add_subcommand("verify-pairings", "two-pairings identity");
    add_type(framed_pair);
    add_mn(framed_pair);
    framed_pair->add_option("--max-tr", o.max_tr, "largest y weight trace");
    set_leaf(framed_pair, "framed verify-pairings");
    auto* framed_phi = framed->add_subcommand("phi", "image of x theta_lambda y");
    add_type(framed_phi);
    add_mn(framed_phi);
    framed_phi->add_option("--x", o.x, "left base word");
    framed_phi->add_option("--y", o.y, "right base word");
    set_leaf(framed_phi, "framed phi");

    auto* crystal = app.add_subcommand("crystal", "string operator suites");
    crystal->require_subcommand(1);
    auto* crystal_check = crystal->add_subcommand("check", "run a property suite");
    add_type(crystal_check);
    add_mn(crystal_check);
    crystal_check->add_option("--suite", o.suite,
                              "epsphi, epsphi-restricted, thetalambda, commute, reach, "
                              "adjoint, or all");
    crystal_check->add_option("--max-tr", o.max_tr, "largest weight trace");
    set_leaf(crystal_check, "crystal check");

    // global options remain usable after a subcommand name
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* c) {
        for (CLI::App* s : c->get_subcommands({})) {
            s->fallthrough();
            enable_fallthrough(s);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    const std::string echo = command_echo(argc, argv);
    const auto t0 = std::chrono::steady_clock::now();

    try {
        FileConfig fc;
        if (!o.config.empty()) fc = parse_config(o.config);

        if (leaf == "datum show") {
            auto d = datum_from(o, fc);
            return finish_query(o, echo, d, datum_lines(d));
        }
        if (leaf == "datum frame") {
            auto d = datum_from(o, fc);
            for (int k = 0; k < o.times; ++k) d = d.frame();
            return finish_query(o, echo, d, datum_lines(d));
        }

        if (leaf == "falg dim" || leaf == "falg gram") {
            auto d = datum_from(o, fc);
            qcb::FAlgebra alg(d);
            cache_in(o, alg);
            auto nu = parse_ints(o.nu);
            qcb::check(nu.size() == d.size(), "--nu needs one entry per node");
            std::vector<std::string> lines;
            if (leaf == "falg dim") {
                lines.push_back("dim f_" + nv_str(nu) + " = " + std::to_string(alg.dim(nu)));
            } else {
                auto words = qcb::enumerate_words(d, nu);
                const auto& g = alg.gram(nu);
                for (size_t i = 0; i < words.size(); ++i)
                    lines.push_back("word " + std::to_string(i) + ": " + words[i].str(d));
                for (size_t i = 0; i < g.rows(); ++i) {
                    std::string row;
                    for (size_t j = 0; j < g.cols(); ++j)
                        row += (j ? "  " : "") + g.at(i, j).str();
                    lines.push_back(row);
                }
            }
            cache_out(o, alg);
            return finish_query(o, echo, d, lines);
        }
        if (leaf == "falg serre-check") {
            auto d = datum_from(o, fc);
            qcb::FAlgebra alg(d);
            cache_in(o, alg);
            qcb::Report rep;
            bool any = false;
            for (int a = 0; a < static_cast<int>(d.size()); ++a)
                for (int b = 0; b < static_cast<int>(d.size()); ++b) {
                    if (a == b) continue;
                    any = true;
                    bool ok = alg.equals_in_f(qcb::serre_element(d, a, b), qcb::FreeElement());
                    rep.add("defining relation for nodes (" + d.name(a) + "," + d.name(b) +
                                ") vanishes",
                            ok);
                }
            if (!any) rep.add("datum has no node pairs, nothing to relate", true);
            cache_out(o, alg);
            return finish_checks(o, echo, d, rep, t0);
        }

        if (leaf == "cb list" || leaf == "cb expand") {
            auto d = datum_from(o, fc);
            qcb::check(d.is_a1_shape() || d.is_a2_shape(),
                       "canonical basis tables need an A1 or A2 shape");
            qcb::FAlgebra alg(d);
            cache_in(o, alg);
            qcb::CBTable table(alg);
            std::vector<std::string> lines;
            if (leaf == "cb list") {
                auto nu = parse_ints(o.nu);
                qcb::check(nu.size() == d.size(), "--nu needs one entry per node");
                for (const auto& b : table.basis(nu))
                    lines.push_back(b.str() + " = " + b.word().str(d));
            } else {
                auto w = qcb::Word::parse(d, o.word);
                for (const auto& [b, c] : table.expand(qcb::FreeElement::single(w)))
                    if (!c.is_zero()) lines.push_back(b.str() + ": " + c.str());
                if (lines.empty()) lines.push_back("0");
            }
            cache_out(o, alg);
            return finish_query(o, echo, d, lines);
        }

        if (leaf == "module form" || leaf == "module weights") {
            auto d = datum_from(o, fc);
            qcb::check(d.is_a1_shape() || d.is_a2_shape(),
                       "module bases need an A1 or A2 shape");
            auto lam = make_weight(fc, o.lam, o.n, d, "--lam");
            qcb::FAlgebra alg(d);
            cache_in(o, alg);
            qcb::CBTable table(alg);
            qcb::Module mod(table, lam);
            std::vector<std::string> lines;
            if (leaf == "module form") {
                auto xw = qcb::Word::parse(d, o.x);
                auto yw = qcb::Word::parse(d, o.y);
                auto val = mod.form(qcb::FreeElement::single(xw), qcb::FreeElement::single(yw));
                lines.push_back(val.str());
            } else {
                for (const auto& nu : mod.weights())
                    lines.push_back(nv_str(nu) + ": dim " +
                                    std::to_string(mod.basis_at(nu).size()));
                lines.push_back("total dimension " + std::to_string(mod.dimension()));
            }
            cache_out(o, alg);
            return finish_query(o, echo, d, lines);
        }

        if (leaf == "tensor diamond" || leaf == "tensor theta") {
            auto d = datum_from(o, fc);
            qcb::check(d.is_a1_shape() || d.is_a2_shape(),
                       "tensor tables need an A1 or A2 shape");
            auto xi = make_weight(fc, o.xi, o.m, d, "--xi (or --m)");
            auto lam = make_weight(fc, o.lam, o.n, d, "--lam (or --n)");
            qcb::FAlgebra alg(d);
            cache_in(o, alg);
            qcb::CBTable table(alg);
            qcb::Module m1(table, xi), m2(table, lam);
            qcb::TensorProduct tp(m1, m2);
            std::vector<std::string> lines;
            for (const auto& w1 : m1.weights())
                for (const auto& b1 : m1.basis_at(w1))
                    for (const auto& w2 : m2.weights())
                        for (const auto& b2 : m2.basis_at(w2)) {
                            qcb::TensorProduct::Index idx{b1, b2};
                            const auto& val = leaf == "tensor diamond"
                                                  ? tp.diamond(idx)
                                                  : tp.theta(qcb::TensorProduct::pure(b1, b2));
                            lines.push_back(b1.str() + " (x) " + b2.str() + " -> " +
                                            tp.str(val));
                        }
            cache_out(o, alg);
            return finish_query(o, echo, d, lines);
        }

        if (leaf.rfind("framed ", 0) == 0 || leaf == "crystal check") {
            auto d = datum_from(o, fc);

            if (leaf == "crystal check" && o.suite == "epsphi") {
                // plain suite over the requested datum, no framing involved
                qcb::check(d.is_a1_shape() || d.is_a2_shape(),
                           "the plain string suite needs an A1 or A2 shape");
                qcb::FAlgebra alg(d);
                cache_in(o, alg);
                qcb::CBTable table(alg);
                auto rep = qcb::crystal_epsphi_suite(table, o.max_tr);
                cache_out(o, alg);
                return finish_checks(o, echo, d, rep, t0);
            }

            auto xi = make_weight(fc, o.xi, o.m, d, "--xi (or --m)");
            auto lam = make_weight(fc, o.lam, o.n, d, "--lam (or --n)");
            qcb::FramedSetup fs(d, xi, lam);
            cache_in(o, fs.base_alg());
            cache_in(o, fs.framed_alg());
            qcb::Report rep;
            if (leaf == "framed verify-cb") {
                rep = fs.verify_cb_correspondence();
            } else if (leaf == "framed verify-positivity") {
                rep = fs.verify_positivity(parse_scope(o.scope));
            } else if (leaf == "framed verify-pairings") {
                rep = fs.verify_two_pairings(o.max_tr);
            } else if (leaf == "framed phi") {
                auto xw = o.x.empty() ? qcb::Word() : qcb::Word::parse(d, o.x);
                auto yw = o.y.empty() ? qcb::Word() : qcb::Word::parse(d, o.y);
                auto elt = fs.phi_pair(xw, yw);
                std::vector<std::string> lines{fs.tensor().str(elt)};
                cache_out(o, fs.base_alg());
                cache_out(o, fs.framed_alg());
                return finish_query(o, echo, d, lines);
            } else if (leaf == "crystal check") {
                if (o.suite == "epsphi-restricted") {
                    rep = qcb::crystal_epsphi_restricted_suite(fs, o.max_tr);
                } else if (o.suite == "thetalambda") {
                    rep = qcb::crystal_thetalambda_suite(fs);
                } else if (o.suite == "commute") {
                    rep = qcb::crystal_commute_suite(fs, o.max_tr);
                } else if (o.suite == "reach") {
                    rep = qcb::crystal_reach_suite(fs, o.max_tr);
                } else if (o.suite == "adjoint") {
                    rep = qcb::crystal_adjoint_suite(fs, o.max_tr);
                } else if (o.suite == "all") {
                    rep.merge(qcb::crystal_epsphi_restricted_suite(fs, o.max_tr));
                    rep.merge(qcb::crystal_thetalambda_suite(fs));
                    rep.merge(qcb::crystal_commute_suite(fs, o.max_tr));
                    rep.merge(qcb::crystal_reach_suite(fs, o.max_tr));
                    rep.merge(qcb::crystal_adjoint_suite(fs, o.max_tr));
                } else {
                    throw qcb::error("unknown suite '" + o.suite + "'");
                }
            }
            cache_out(o, fs.base_alg());
            cache_out(o, fs.framed_alg());
            return finish_checks(o, echo, d, rep, t0);
        }

        throw qcb::error("no command selected");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
