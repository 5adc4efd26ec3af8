/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <echelon/echelon.hh>
#include <echelon/json_io.hh>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace echelon;

namespace
{
    // sysexits-style codes, plus 2 for structurally invalid input
    constexpr int exit_invalid = 2, exit_usage = 64, exit_document = 65, exit_other = 1;

    struct Globals
    {
        std::uint64_t seed = 0;
        std::string out;
        std::string format = "pretty";
    };

    auto read_document(const std::string & path) -> Json
    {
        std::string text;
        if (path == "-")
            text.assign(std::istreambuf_iterator<char>(std::cin), {});
        else {
            std::ifstream in(path);
            if (! in)
                throw std::runtime_error("cannot read " + path);
            text.assign(std::istreambuf_iterator<char>(in), {});
        }
        return parse_document(text);
    }

    void emit(const Globals & g, const Json & j)
    {
        auto text = g.format == "compact" ? j.dump() : j.dump(2);
        if (g.out.empty() || g.out == "-") {
            std::cout << text << '\n';
            return;
        }
        std::ofstream out(g.out);
        if (! (out << text << '\n'))
            throw std::runtime_error("cannot write " + g.out);
    }

    auto labels_to_json(const LimitModel & m, std::size_t n) -> Json
    {
        Json rows = Json::array();
        for (PointId i = 1 ; i < n ; ++i) {
            Json row = Json::array();
            for (PointId j = 0 ; j < i ; ++j)
                row.push_back(to_string(m.rank(i, j)));
            rows.push_back(std::move(row));
        }
        return rows;
    }

    auto parse_mode(const std::string & s) -> LimitMode
    {
        return s == "random" ? LimitMode::random : LimitMode::deterministic;
    }

    /// Validates a document of any type this tool reads or writes; result
    /// documents are checked through the documents they contain.
    auto validate(const Json & j) -> Json
    {
        auto type = document_type(j);
        Json report = make_document("validation");
        report["document"] = type;

        if (type == "space") {
            auto x = space_from_json(j);
            report["points"] = x.size();
            report["ranks"] = x.rank_count();
        }
        else if (type == "ordered_space")
            report["points"] = ordered_space_from_json(j).size();
        else if (type == "metric") {
            auto d = metric_from_json(j);
            report["points"] = d.size();
            report["dull"] = is_dull(d);
        }
        else if (type == "weights")
            report["points"] = weights_from_json(j).first;
        else if (type == "graph")
            report["vertices"] = graph_from_json(j).size();
        else if (type == "map")
            report["points"] = map_from_json(j).size();
        else if (type == "partial_isomorphism") {
            // the identity must be an isomorphism between the spanned spaces
            auto left = space_from_json(detail::field(j, "left_space")), right = space_from_json(detail::field(j, "right_space"));
            if (left != right)
                throw EchelonError(ErrorCode::not_an_embedding, "spanned spaces differ");
        }
        else if (type == "amalgam" || type == "katetov" || type == "extension" || type == "arrow" || type == "witness_search"
                || type == "space_list" || type == "isomorphism" || type == "validation") {
            std::size_t nested = 0;
            auto visit = [&] (const Json & value) {
                if (value.is_object() && value.contains("format")) {
                    validate(value);
                    ++nested;
                }
            };
            for (auto & [key, value] : j.items()) {
                visit(value);
                if (value.is_array())
                    for (auto & v : value)
                        visit(v);
            }
            report["nested"] = nested;
        }
        else
            throw EchelonError(ErrorCode::malformed_json, "unknown document type \"" + type + "\"");

        report["valid"] = true;
        return report;
    }

    auto error_document(const EchelonError & e) -> Json
    {
        auto j = make_document("error");
        j["code"] = std::string(to_string(e.code()));
        std::string message = e.what();
        auto prefix = std::string(to_string(e.code())) + ": ";
        j["message"] = message.starts_with(prefix) ? message.substr(prefix.size()) : message;
        return j;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{ "Finite echeloned spaces: validation, metrization, amalgamation, Katetov extensions, limit models and "
        "partition arrows. Documents are JSON; \"-\" reads standard input." };
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_option("--seed", globals.seed, "Seed for every randomized command")->capture_default_str();
    app.add_option("--out", globals.out, "Write the result here instead of standard output");
    app.add_option("--format", globals.format, "Output layout")->check(CLI::IsMember({ "pretty", "compact" }))->capture_default_str();

    // validate
    std::string validate_path;
    auto validate_cmd = app.add_subcommand("validate", "Check any document and report what it holds");
    validate_cmd->add_option("file", validate_path)->required();

    // echelon
    std::string weights_path;
    auto echelon_cmd = app.add_subcommand("echelon", "Echeloning quotient of a weights document");
    echelon_cmd->add_option("file", weights_path)->required();

    // metrize / from-metric
    std::string metrize_path, from_metric_path;
    auto metrize_cmd = app.add_subcommand("metrize", "Dull metric realizing a space");
    metrize_cmd->add_option("file", metrize_path)->required();
    auto from_metric_cmd = app.add_subcommand("from-metric", "Space induced by a metric");
    from_metric_cmd->add_option("file", from_metric_path)->required();

    // amalgamate / jep
    std::string am_a, am_b1, am_b2, am_f1, am_f2;
    auto amalgamate_cmd = app.add_subcommand("amalgamate", "Strong amalgam of f1: A -> B1 and f2: A -> B2");
    amalgamate_cmd->add_option("--a", am_a)->required();
    amalgamate_cmd->add_option("--b1", am_b1)->required();
    amalgamate_cmd->add_option("--b2", am_b2)->required();
    amalgamate_cmd->add_option("--f1", am_f1)->required();
    amalgamate_cmd->add_option("--f2", am_f2)->required();
    auto jep_cmd = app.add_subcommand("jep", "Joint embedding of two spaces over a shared point");
    jep_cmd->add_option("--b1", am_b1)->required();
    jep_cmd->add_option("--b2", am_b2)->required();

    // katetov / extend
    std::string k_space, k_map, k_target, k_extend, k_inclusion;
    std::size_t k_max_points = 3;
    auto katetov_cmd = app.add_subcommand("katetov", "K(X), optionally K(phi) for phi: X -> Y and a one-point extension");
    katetov_cmd->add_option("--space", k_space)->required();
    auto map_opt = katetov_cmd->add_option("--map", k_map, "Embedding phi: X -> Y");
    katetov_cmd->add_option("--target", k_target, "The space Y of --map")->needs(map_opt);
    map_opt->needs("--target");
    katetov_cmd->add_option("--extend", k_extend, "One-point extension Y of X to realize in K(X)");
    katetov_cmd->add_option("--inclusion", k_inclusion, "Embedding X -> Y for --extend (default: the first points)");
    katetov_cmd->add_option("--max-points", k_max_points)->capture_default_str();
    auto extend_cmd = app.add_subcommand("extend", "Embed a one-point extension of X into K(X) over X");
    extend_cmd->add_option("--space", k_space)->required();
    extend_cmd->add_option("--extension", k_extend)->required();
    extend_cmd->add_option("--inclusion", k_inclusion);
    extend_cmd->add_option("--max-points", k_max_points)->capture_default_str();

    // limit
    auto limit_cmd = app.add_subcommand("limit", "Seeded models of the limit space");
    limit_cmd->require_subcommand(1);
    std::string l_mode = "deterministic", l_mode1 = "random", l_mode2 = "deterministic";
    std::size_t l_n = 16, l_depth = 8, l_cap = std::size_t(1) << 20;
    double l_p = 0.5;
    std::uint64_t l_seed1 = 0, l_seed2 = 1;
    auto sample_cmd = limit_cmd->add_subcommand("sample", "The first n points with their labels");
    sample_cmd->add_option("--mode", l_mode)->check(CLI::IsMember({ "random", "deterministic" }))->capture_default_str();
    sample_cmd->add_option("--n", l_n)->capture_default_str();
    sample_cmd->add_option("--p", l_p)->capture_default_str();
    auto bnf_cmd = limit_cmd->add_subcommand("bnf", "Back-and-forth certificate between two models");
    bnf_cmd->add_option("--seed1", l_seed1)->capture_default_str();
    bnf_cmd->add_option("--seed2", l_seed2)->capture_default_str();
    bnf_cmd->add_option("--mode1", l_mode1)->check(CLI::IsMember({ "random", "deterministic" }))->capture_default_str();
    bnf_cmd->add_option("--mode2", l_mode2)->check(CLI::IsMember({ "random", "deterministic" }))->capture_default_str();
    bnf_cmd->add_option("--depth", l_depth)->capture_default_str();
    bnf_cmd->add_option("--p", l_p)->capture_default_str();
    bnf_cmd->add_option("--vertex-cap", l_cap)->capture_default_str();

    // ramsey
    auto ramsey_cmd = app.add_subcommand("ramsey", "Partition arrows between ordered spaces");
    ramsey_cmd->require_subcommand(1);
    std::string r_c, r_a, r_b;
    unsigned r_k = 2;
    std::uint64_t r_budget = std::uint64_t(1) << 20;
    WitnessSearchOptions r_search;
    auto check_cmd = ramsey_cmd->add_subcommand("check", "Whether C -> (B)^A_k");
    check_cmd->add_option("--c", r_c)->required();
    check_cmd->add_option("--a", r_a)->required();
    check_cmd->add_option("--b", r_b)->required();
    check_cmd->add_option("--k", r_k)->capture_default_str();
    check_cmd->add_option("--budget", r_budget)->capture_default_str();
    auto search_cmd = ramsey_cmd->add_subcommand("search", "Smallest C found with C -> (B)^A_k");
    search_cmd->add_option("--a", r_a)->required();
    search_cmd->add_option("--b", r_b)->required();
    search_cmd->add_option("--k", r_k)->capture_default_str();
    search_cmd->add_option("--cap", r_search.size_cap)->capture_default_str();
    search_cmd->add_option("--exhaustive-cap", r_search.exhaustive_cap)->capture_default_str();
    search_cmd->add_option("--samples", r_search.samples)->capture_default_str();
    search_cmd->add_option("--budget", r_budget)->capture_default_str();

    // enumerate / iso
    std::size_t e_m = 3;
    EnumerateOptions e_options;
    bool e_count_only = false;
    auto enumerate_cmd = app.add_subcommand("enumerate", "Every space on m labelled points");
    enumerate_cmd->add_option("--m", e_m)->capture_default_str();
    enumerate_cmd->add_flag("--iso", e_options.up_to_isomorphism, "One space per isomorphism type");
    enumerate_cmd->add_option("--cap", e_options.cap)->capture_default_str();
    enumerate_cmd->add_flag("--count", e_count_only, "Report only the number of spaces");
    std::string iso_x, iso_y;
    auto iso_cmd = app.add_subcommand("iso", "Isomorphism test through canonical forms");
    iso_cmd->add_option("first", iso_x)->required();
    iso_cmd->add_option("second", iso_y)->required();

    // graph
    auto graph_cmd = app.add_subcommand("graph", "Coloured graphs and their spaces");
    graph_cmd->require_subcommand(1);
    std::size_t g_n = 16;
    std::string g_path;
    auto random_cmd = graph_cmd->add_subcommand("random", "Complete graph with geometric edge colours");
    random_cmd->add_option("--n", g_n)->capture_default_str();
    random_cmd->add_option("--p", l_p)->capture_default_str();
    auto to_space_cmd = graph_cmd->add_subcommand("to-space", "Space ranked by the colour order");
    to_space_cmd->add_option("file", g_path)->required();
    auto from_space_cmd = graph_cmd->add_subcommand("from-space", "Graph coloured by rank");
    from_space_cmd->add_option("file", g_path)->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (validate_cmd->parsed())
            emit(globals, validate(read_document(validate_path)));
        else if (echelon_cmd->parsed()) {
            auto [points, weights] = weights_from_json(read_document(weights_path));
            emit(globals, to_json(from_weights(points, weights)));
        }
        else if (metrize_cmd->parsed())
            emit(globals, to_json(metrize_dull(space_from_json(read_document(metrize_path)))));
        else if (from_metric_cmd->parsed())
            emit(globals, to_json(from_metric(metric_from_json(read_document(from_metric_path)))));
        else if (amalgamate_cmd->parsed() || jep_cmd->parsed()) {
            auto b1 = space_from_json(read_document(am_b1)), b2 = space_from_json(read_document(am_b2));
            AmalgamResult r;
            if (jep_cmd->parsed())
                r = jep(b1, b2);
            else
                r = amalgamate(space_from_json(read_document(am_a)), b1, b2, map_from_json(read_document(am_f1)),
                        map_from_json(read_document(am_f2)));
            auto j = make_document("amalgam");
            j["space"] = to_json(r.space);
            j["g1"] = r.g1;
            j["g2"] = r.g2;
            j["g1_ranks"] = r.g1_ranks;
            j["g2_ranks"] = r.g2_ranks;
            emit(globals, j);
        }
        else if (katetov_cmd->parsed() || extend_cmd->parsed()) {
            auto x = space_from_json(read_document(k_space));
            KatetovOptions options{ k_max_points };
            auto extension = [&] {
                auto y = space_from_json(read_document(k_extend));
                auto e = k_inclusion.empty() ? identity_map(x.size()) : map_from_json(read_document(k_inclusion));
                return realize_extension(x, y, e, options);
            };

            if (extend_cmd->parsed()) {
                auto j = make_document("extension");
                j["map"] = extension();
                j["katetov_points"] = katetov_space_size(x.size(), x.rank_count());
                emit(globals, j);
            }
            else {
                auto k = katetov_space(x, options);
                auto j = make_document("katetov");
                j["space"] = to_json(k.space());
                j["chain_size"] = k.chain().size();
                j["lambda"] = k.lambda();
                if (! k_map.empty()) {
                    auto y = space_from_json(read_document(k_target));
                    auto m = katetov_map(x, y, map_from_json(read_document(k_map)), options);
                    j["map"] = m.points;
                    j["chain_map"] = m.chain;
                }
                if (! k_extend.empty())
                    j["extension"] = extension();
                emit(globals, j);
            }
        }
        else if (sample_cmd->parsed()) {
            auto m = limit_new(parse_mode(l_mode), globals.seed, LimitOptions{ l_p });
            auto j = to_json(m.sample_prefix(l_n));
            j["mode"] = l_mode;
            j["seed"] = globals.seed;
            j["labels"] = labels_to_json(m, l_n);
            emit(globals, j);
        }
        else if (bnf_cmd->parsed()) {
            LimitOptions options{ l_p };
            options.vertex_cap = l_cap;
            auto first = limit_new(parse_mode(l_mode1), l_seed1, options), second = limit_new(parse_mode(l_mode2), l_seed2, options);
            auto iso = back_and_forth(first, second, l_depth);
            auto [left, right] = spanned_spaces(first, second, iso);
            auto j = make_document("partial_isomorphism");
            j["depth"] = l_depth;
            j["first"] = { { "mode", l_mode1 }, { "seed", l_seed1 } };
            j["second"] = { { "mode", l_mode2 }, { "seed", l_seed2 } };
            j["left"] = iso.left;
            j["right"] = iso.right;
            j["left_space"] = to_json(left);
            j["right_space"] = to_json(right);
            j["verified"] = verify_partial_isomorphism(first, second, iso);
            emit(globals, j);
        }
        else if (check_cmd->parsed()) {
            auto c = ordered_space_from_json(read_document(r_c)), a = ordered_space_from_json(read_document(r_a)),
                 b = ordered_space_from_json(read_document(r_b));
            auto bad = find_bad_colouring(c, a, b, r_k, ArrowOptions{ r_budget });
            auto j = make_document("arrow");
            j["k"] = r_k;
            j["arrow"] = ! bad;
            j["a_copies"] = ordered_copies(c, a);
            if (bad)
                j["bad_colouring"] = *bad;
            emit(globals, j);
        }
        else if (search_cmd->parsed()) {
            r_search.seed = globals.seed;
            r_search.arrow.budget = r_budget;
            auto a = ordered_space_from_json(read_document(r_a)), b = ordered_space_from_json(read_document(r_b));
            auto c = witness_search(a, b, r_k, r_search);
            auto j = make_document("witness_search");
            j["k"] = r_k;
            j["cap"] = r_search.size_cap;
            j["found"] = c.has_value();
            if (c)
                j["c"] = to_json(*c);
            emit(globals, j);
        }
        else if (enumerate_cmd->parsed()) {
            auto j = make_document("space_list");
            j["points"] = e_m;
            j["up_to_isomorphism"] = e_options.up_to_isomorphism;
            std::size_t count = 0;
            Json spaces = Json::array();
            SpaceEnumerator all(e_m, e_options);
            while (auto x = all.next()) {
                ++count;
                if (! e_count_only)
                    spaces.push_back(to_json(*x));
            }
            j["count"] = count;
            if (! e_count_only)
                j["spaces"] = std::move(spaces);
            emit(globals, j);
        }
        else if (iso_cmd->parsed()) {
            auto x = space_from_json(read_document(iso_x)), y = space_from_json(read_document(iso_y));
            auto h = are_isomorphic(x, y);
            auto j = make_document("isomorphism");
            j["isomorphic"] = h.has_value();
            if (h)
                j["map"] = *h;
            j["canonical"] = to_json(canonical_form(x).space);
            emit(globals, j);
        }
        else if (random_cmd->parsed())
            emit(globals, to_json(random_coloured_graph(g_n, GeometricColouring{ l_p, globals.seed })));
        else if (to_space_cmd->parsed())
            emit(globals, to_json(from_coloured_graph(graph_from_json(read_document(g_path)))));
        else if (from_space_cmd->parsed())
            emit(globals, to_json(to_coloured_graph(space_from_json(read_document(g_path)))));
    }
    catch (const EchelonError & e) {
        std::cerr << error_document(e).dump() << '\n';
        if (is_validation_error(e.code()))
            return exit_invalid;
        if (is_document_error(e.code()))
            return exit_document;
        return exit_other;
    }
    catch (const std::exception & e) {
        Json j = make_document("error");
        j["code"] = "io";
        j["message"] = e.what();
        std::cerr << j.dump() << '\n';
        return exit_other;
    }

    return 0;
}
