#include "cpic/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpic/basis.hpp"
#include "cpic/enumerate.hpp"
#include "cpic/lambda.hpp"
#include "cpic/notation.hpp"
#include "cpic/transforms.hpp"

namespace cpic {

namespace {

using nlohmann::ordered_json;

std::string slurp(std::istream& in) {
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// --input accepts a path, "-" for stdin, or literal content ("(..." / "{...").
std::string read_input(const std::string& arg, std::istream& stdin_stream) {
    if (arg == "-")
        return slurp(stdin_stream);
    std::string t = trim(arg);
    if (!t.empty() && (t.front() == '(' || t.front() == '{'))
        return t;
    std::ifstream file(arg);
    if (!file)
        throw InputError("cannot read input file \"" + arg + "\"");
    return slurp(file);
}

ClusterPicture load_picture(const std::string& input_arg, const std::string& vcf_flag,
                            std::optional<long long> p_flag, std::istream& stdin_stream) {
    std::string content = trim(read_input(input_arg, stdin_stream));
    if (content.empty())
        throw InputError("empty input");
    if (content.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(content);
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("bad JSON: ") + e.what());
        }
        if (j.is_object() && j.contains("roots") && !j.contains("p") && p_flag)
            j["p"] = *p_flag;
        if (j.is_object() && !j.contains("roots") && !j.contains("vcf"))
            j["vcf"] = vcf_flag;
        return picture_from_json(j);
    }
    if (content.front() == '(')
        return parse_picture(content, Rational::parse(vcf_flag));
    throw InputError("input must be a JSON object or a cluster picture text");
}

// Expression with the given valuation, used when re-emitting a picture whose
// leading coefficient is known only through v(c_f).
std::string leading_coeff_for(const Rational& vcf) {
    if (!vcf.is_integer())
        throw ValidationError("v(c_f) of a root-backed picture must be an integer");
    if (vcf.sign() >= 0)
        return "p^" + vcf.str();
    return "1/p^" + (-vcf).str();
}

ordered_json integrality_json(const IntegralityReport& rep) {
    ordered_json j;
    j["depths_integral"] = rep.depths_integral;
    j["nu_even_on_principal"] = rep.nu_even_on_principal;
    j["equation_integral"] = rep.equation_integral;
    j["lambda_multiple_of_8"] = rep.lambda_multiple_of_8;
    j["ok"] = rep.ok();
    j["issues"] = rep.issues;
    return j;
}

ordered_json picture_json(const ClusterPicture& pic) {
    ordered_json j;
    j["picture"] = pic.canonical_text();
    j["vcf"] = pic.vcf().str();
    if (pic.prime()) {
        const mpz_class& p = *pic.prime();
        if (p.fits_slong_p())
            j["p"] = p.get_si();
        else
            j["p"] = p.get_str();
    }
    if (pic.root_values()) {
        j["leading_coeff"] = leading_coeff_for(pic.vcf());
        ordered_json roots = ordered_json::array();
        for (const Rational& r : *pic.root_values())
            roots.push_back(r.str());
        j["roots"] = roots;
    }
    return j;
}

ordered_json cluster_row(const ClusterPicture& pic, NodeId s) {
    ordered_json row;
    row["path"] = pic.path_label(s);
    row["size"] = pic.size(s);
    row["depth"] = pic.depth(s).str();
    if (s == pic.top())
        row["rel_depth"] = nullptr;
    else
        row["rel_depth"] = pic.rel_depth(s).str();
    row["nu"] = pic.nu(s).str();
    row["principal"] = pic.is_principal(s);
    row["centre"] = pic.centre(s).text;
    return row;
}

void emit(std::ostream& out, const ordered_json& j) {
    out << j.dump(2) << "\n";
}

std::string pad(const std::string& s, size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> widths;
    for (const auto& r : rows)
        for (size_t c = 0; c < r.size(); ++c) {
            if (widths.size() <= c)
                widths.resize(c + 1, 0);
            widths[c] = std::max(widths[c], r[c].size());
        }
    for (const auto& r : rows) {
        std::string line;
        for (size_t c = 0; c < r.size(); ++c)
            line += pad(r[c], c + 1 == r.size() ? r[c].size() : widths[c] + 2);
        out << trim(line) << "\n";
    }
}

int cmd_cluster(const ClusterPicture& pic, const std::string& format, std::ostream& out) {
    IntegralityReport rep = validate_integrality(pic);
    if (format == "json") {
        ordered_json j = picture_json(pic);
        j["genus"] = pic.genus();
        ordered_json rows = ordered_json::array();
        for (NodeId s : pic.proper_clusters())
            rows.push_back(cluster_row(pic, s));
        j["clusters"] = rows;
        j["integrality"] = integrality_json(rep);
        emit(out, j);
    } else {
        out << "picture: " << pic.canonical_text() << "\n";
        out << "vcf: " << pic.vcf().str() << "\n";
        if (pic.prime())
            out << "p: " << pic.prime()->get_str() << "\n";
        out << "genus: " << pic.genus() << "\n";
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"cluster", "size", "depth", "rel.depth", "nu", "principal", "centre"});
        for (NodeId s : pic.proper_clusters())
            rows.push_back({pic.path_label(s), std::to_string(pic.size(s)),
                            pic.depth(s).str(),
                            s == pic.top() ? "-" : pic.rel_depth(s).str(),
                            pic.nu(s).str(), pic.is_principal(s) ? "yes" : "no",
                            pic.centre(s).text});
        print_table(out, rows);
        if (rep.ok()) {
            out << "integrality: ok\n";
        } else {
            out << "integrality: FAILED\n";
            for (const std::string& m : rep.issues)
                out << "  - " << m << "\n";
        }
    }
    return 0;
}

int cmd_basis(const ClusterPicture& pic, bool trace, const std::string& format,
              std::ostream& out) {
    BasisResult b = basis_sequence(pic);
    if (format == "json") {
        ordered_json j;
        j["genus"] = pic.genus();
        ordered_json steps = ordered_json::array();
        for (const BasisStep& st : b.steps) {
            ordered_json s;
            s["i"] = st.index;
            s["cluster"] = pic.subtree_text(st.cluster);
            s["path"] = pic.path_label(st.cluster);
            s["e"] = st.exponent.str();
            s["centre"] = st.centre.text;
            steps.push_back(s);
        }
        j["steps"] = steps;
        ordered_json mu = ordered_json::array();
        for (const Differential& d : b.differentials)
            mu.push_back(d.render());
        j["mu"] = mu;
        j["sum_e"] = b.sum_e().str();
        j["warnings"] = b.warnings;
        if (trace) {
            ordered_json tr = ordered_json::array();
            for (size_t i = 0; i < b.trace.size(); ++i) {
                ordered_json step;
                step["i"] = static_cast<int>(i);
                ordered_json vals = ordered_json::array();
                for (const auto& [s, v] : b.trace[i].values) {
                    ordered_json row;
                    row["path"] = pic.path_label(s);
                    row["value"] = v.str();
                    vals.push_back(row);
                }
                step["values"] = vals;
                step["chosen"] = pic.path_label(b.trace[i].chosen);
                tr.push_back(step);
            }
            j["trace"] = tr;
        }
        emit(out, j);
    } else {
        out << "genus: " << pic.genus() << "\n";
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"step", "cluster", "e", "centre"});
        for (const BasisStep& st : b.steps)
            rows.push_back({std::to_string(st.index), pic.path_label(st.cluster),
                            st.exponent.str(), st.centre.text});
        print_table(out, rows);
        for (size_t i = 0; i < b.differentials.size(); ++i)
            out << "mu_" << i << " = " << b.differentials[i].render() << "\n";
        out << "sum e_i = " << b.sum_e().str() << "\n";
        if (trace) {
            out << "trace:\n";
            std::vector<std::vector<std::string>> tr;
            std::vector<std::string> head = {"cluster", "nu", "d"};
            for (size_t i = 0; i < b.trace.size(); ++i)
                head.push_back("step" + std::to_string(i));
            tr.push_back(head);
            const std::vector<NodeId> clusters = pic.proper_clusters();
            for (size_t k = 0; k < clusters.size(); ++k) {
                NodeId s = clusters[k];
                std::vector<std::string> row = {pic.path_label(s), pic.nu(s).str(),
                                                pic.depth(s).str()};
                for (const BasisTraceStep& step : b.trace) {
                    const Rational& v = step.values[k].second;
                    row.push_back(step.chosen == s ? "[" + v.str() + "]" : v.str());
                }
                tr.push_back(row);
            }
            print_table(out, tr);
        }
        for (const std::string& w : b.warnings)
            out << "warning: " << w << "\n";
    }
    return 0;
}

int cmd_lambda(const ClusterPicture& pic, const std::string& format, std::ostream& out) {
    LambdaResult r = lambda_result(pic);
    if (format == "json") {
        ordered_json j;
        j["eight_v_lambda"] = r.eight_v_lambda.str();
        j["v_lambda"] = r.v_lambda.str();
        j["integral"] = r.integral;
        emit(out, j);
    } else {
        out << "8*v(lambda) = " << r.eight_v_lambda.str() << "\n";
        out << "v(lambda) = " << r.v_lambda.str() << "\n";
        out << "integral: " << (r.integral ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_disc(const ClusterPicture& pic, const std::string& format, std::ostream& out,
             std::ostream& err) {
    if (!pic.root_values())
        throw ValidationError("disc requires root values");
    LambdaResult lr = lambda_result(pic);
    DiscResult dr = disc_result(pic);
    Rational direct = disc_valuation_from_roots(
        *pic.root_values(), Rational(1), *pic.prime());
    direct += Rational(4 * pic.genus() + 2) * pic.vcf();  // vcf-carried leading term
    if (direct != dr.v_disc) {
        err << "error: discriminant valuation mismatch: picture " << dr.v_disc.str()
            << " vs roots " << direct.str() << "\n";
        return 2;
    }
    if (format == "json") {
        ordered_json j;
        j["eight_v_lambda"] = lr.eight_v_lambda.str();
        j["v_lambda"] = lr.v_lambda.str();
        j["integral"] = lr.integral;
        j["v_disc"] = dr.v_disc.str();
        j["hyperdisc_order"] = dr.hyperdisc_order.str();
        emit(out, j);
    } else {
        out << "8*v(lambda) = " << lr.eight_v_lambda.str() << "\n";
        out << "v(lambda) = " << lr.v_lambda.str() << "\n";
        out << "integral: " << (lr.integral ? "yes" : "no") << "\n";
        out << "v(disc) = " << dr.v_disc.str() << "\n";
        out << "hyperdisc order = " << dr.hyperdisc_order.str() << "\n";
    }
    return 0;
}

int cmd_transform(const ClusterPicture& pic, const std::string& op,
                  const std::string& format, std::ostream& out, std::ostream& err) {
    TransformSpec spec = TransformSpec::parse(op);
    ClusterPicture after = apply_transform(pic, spec);

    std::optional<Rational> predicted, recomputed;
    if (pic.genus() >= 2) {
        predicted = predicted_lambda8_delta(pic, spec);
        recomputed = lambda8(after) - lambda8(pic);
    }
    bool match = !predicted || *predicted == *recomputed;

    if (format == "json") {
        ordered_json j;
        j["op"] = spec.str();
        j["before"] = picture_json(pic);
        j["after"] = picture_json(after);
        j["predicted_delta"] = predicted ? ordered_json(predicted->str()) : nullptr;
        j["recomputed_delta"] = recomputed ? ordered_json(recomputed->str()) : nullptr;
        j["match"] = predicted ? ordered_json(match) : nullptr;
        if (pic.root_values() && pic.genus() >= 2)
            j["hyperdisc_before"] = hyperdisc_order(pic).str();
        if (after.root_values() && after.genus() >= 2)
            j["hyperdisc_after"] = hyperdisc_order(after).str();
        emit(out, j);
    } else {
        out << "op: " << spec.str() << "\n";
        out << "before: " << pic.canonical_text() << "  vcf " << pic.vcf().str() << "\n";
        out << "after:  " << after.canonical_text() << "  vcf " << after.vcf().str()
            << "\n";
        if (predicted) {
            out << "predicted lambda8 delta:  " << predicted->str() << "\n";
            out << "recomputed lambda8 delta: " << recomputed->str() << "\n";
            out << "match: " << (match ? "yes" : "NO") << "\n";
        }
    }
    if (!match) {
        err << "error: transform correction law failed for " << spec.str() << "\n";
        return 2;
    }
    return 0;
}

int cmd_check(const EnumSpec& spec, int jobs, const std::string& format,
              std::ostream& out, std::ostream& err) {
    CheckReport report = run_check(spec, jobs);
    if (format == "json") {
        ordered_json j;
        j["max_roots"] = spec.max_roots;
        j["pictures_checked"] = report.pictures_checked;
        ordered_json fails = ordered_json::array();
        for (const CheckFailure& f : report.failures) {
            ordered_json row;
            row["picture"] = f.picture;
            row["identity"] = f.identity;
            row["expected"] = f.expected;
            row["got"] = f.got;
            fails.push_back(row);
        }
        j["failures"] = fails;
        j["ok"] = report.ok();
        emit(out, j);
    } else {
        out << "checked " << report.pictures_checked << " pictures\n";
        for (const CheckFailure& f : report.failures)
            out << "FAIL " << f.picture << " [" << f.identity << "] expected "
                << f.expected << ", got " << f.got << "\n";
        out << (report.ok() ? "all identities hold\n" : "identity failures found\n");
    }
    if (!report.ok()) {
        err << "error: " << report.failures.size() << " identity failure(s)\n";
        return 2;
    }
    return 0;
}

std::vector<long long> parse_ll_list(const std::string& csv, const char* what) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError(std::string("bad ") + what + " list \"" + csv + "\"");
        }
    }
    if (out.empty())
        throw InputError(std::string(what) + " list is empty");
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"exact cluster-picture computations for semistable hyperelliptic curves"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string vcf_flag = "0";
    std::optional<long long> p_flag;
    std::string format = "text";
    bool trace = false;
    std::string op;

    auto add_common = [&](CLI::App* sub, bool with_input = true) {
        if (with_input)
            sub->add_option("--input,-i,input", input,
                            "path, '-' for stdin, or literal text/JSON");
        sub->add_option("--vcf", vcf_flag, "v(c_f) for picture-text input");
        sub->add_option("--p", p_flag, "prime, used when roots JSON omits \"p\"");
        sub->add_option("--format", format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* cluster = app.add_subcommand("cluster", "canonical picture, depth/nu table");
    add_common(cluster);
    CLI::App* basis = app.add_subcommand("basis", "basis of integral differentials");
    add_common(basis);
    basis->add_flag("--trace", trace, "emit the stepwise value table");
    CLI::App* lambda = app.add_subcommand("lambda", "valuation of the lambda scalar");
    add_common(lambda);
    CLI::App* disc = app.add_subcommand("disc", "discriminant valuations (needs roots)");
    add_common(disc);
    CLI::App* transform = app.add_subcommand("transform", "apply a picture manipulation");
    add_common(transform);
    transform->add_option("--op", op, "deepen:t | add-root | redistribute:<path>:t | "
                                      "scale-leading:m | rescale:t,s | shift:z")
        ->required();

    CLI::App* check = app.add_subcommand("check", "cross-validate identities over a grid");
    int max_roots = 8;
    std::string depths_csv = "1,2,3";
    std::string dr_csv = "0,1";
    std::string vcf_csv = "0,2";
    std::optional<size_t> sample;
    std::optional<uint64_t> seed;
    size_t cap = 100000;
    int jobs = 1;
    check->add_option("--max-roots", max_roots, "largest number of roots (>= 5)");
    check->add_option("--depths", depths_csv, "relative depth grid, e.g. 1,2,3");
    check->add_option("--dr", dr_csv, "top depth grid, e.g. 0,1");
    check->add_option("--vcf", vcf_csv, "vcf grid, e.g. 0,2");
    check->add_option("--sample", sample, "check a uniform sample of this size");
    check->add_option("--seed", seed, "seed for sampling and randomized tie-breaks");
    check->add_option("--cap", cap, "picture cap before sampling kicks in");
    check->add_option("--jobs", jobs, "worker threads");
    check->add_option("--format", format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        std::vector<std::string> argv(args.rbegin(), args.rend());
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (check->parsed()) {
            EnumSpec spec;
            spec.max_roots = max_roots;
            spec.rel_depths = parse_ll_list(depths_csv, "depths");
            spec.top_depths = parse_ll_list(dr_csv, "dr");
            spec.vcfs = parse_ll_list(vcf_csv, "vcf");
            spec.sample = sample;
            spec.seed = seed;
            spec.cap = cap;
            return cmd_check(spec, jobs, format, out, err);
        }
        ClusterPicture pic = load_picture(input, vcf_flag, p_flag, in);
        if (cluster->parsed())
            return cmd_cluster(pic, format, out);
        if (basis->parsed())
            return cmd_basis(pic, trace, format, out);
        if (lambda->parsed())
            return cmd_lambda(pic, format, out);
        if (disc->parsed())
            return cmd_disc(pic, format, out, err);
        if (transform->parsed())
            return cmd_transform(pic, op, format, out, err);
        err << "error: no subcommand\n";
        return 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cpic
