#include "cpic/enumerate.hpp"

#include <algorithm>
#include <random>
#include <thread>
#include <unordered_set>

#include "cpic/basis.hpp"
#include "cpic/lambda.hpp"
#include "cpic/notation.hpp"
#include "cpic/transforms.hpp"

namespace cpic {

void EnumSpec::validate() const {
    if (max_roots < 5)
        throw InputError("max_roots must be at least 5 (genus >= 2)");
    if (rel_depths.empty() || top_depths.empty() || vcfs.empty())
        throw InputError("depth and vcf grids must be non-empty");
    for (long long d : rel_depths)
        if (d < 1)
            throw InputError("relative depths must be positive integers");
    for (long long d : top_depths)
        if (d < 0)
            throw InputError("top depths must be non-negative integers");
    for (long long v : vcfs)
        if (v < 0 || v % 2 != 0)
            throw InputError("vcf grid values must be non-negative even integers");
    if (sample && *sample == 0)
        throw InputError("sample size must be positive");
}

namespace {

// Unordered tree shapes with a given number of leaves, every internal node
// carrying at least two items. A child token is (size, index into the
// registry of that size); size 1 is a leaf.
struct Shape {
    std::vector<std::pair<int, int>> kids;
};

using Registry = std::vector<std::vector<Shape>>;

Registry build_registry(int max_n) {
    Registry reg(static_cast<size_t>(max_n) + 1);
    for (int n = 2; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> cur;
        // children chosen as a non-increasing token sequence so that each
        // multiset of subtrees is produced exactly once
        std::function<void(int, int, int)> rec = [&](int remaining, int psize, int pidx) {
            if (remaining == 0) {
                if (cur.size() >= 2)
                    reg[static_cast<size_t>(n)].push_back(Shape{cur});
                return;
            }
            for (int size = std::min(remaining, psize); size >= 1; --size) {
                if (size == 1) {
                    cur.emplace_back(1, 0);
                    rec(remaining - 1, 1, 0);
                    cur.pop_back();
                    continue;
                }
                size_t start = (size == psize) ? static_cast<size_t>(pidx) : 0;
                for (size_t idx = start; idx < reg[static_cast<size_t>(size)].size(); ++idx) {
                    cur.emplace_back(size, static_cast<int>(idx));
                    rec(remaining - size, size, static_cast<int>(idx));
                    cur.pop_back();
                }
            }
        };
        rec(n, n, 0);
    }
    return reg;
}

int internal_count(const Registry& reg, int size, int idx) {
    if (size == 1)
        return 0;
    int total = 1;
    for (auto [ksize, kidx] : reg[static_cast<size_t>(size)][static_cast<size_t>(idx)].kids)
        total += internal_count(reg, ksize, kidx);
    return total;
}

using TreeSpec = ClusterPicture::TreeSpec;

TreeSpec build_spec(const Registry& reg, int size, int idx, const Rational& abs_depth,
                    const std::function<Rational()>& next_delta) {
    TreeSpec t;
    t.depth = abs_depth;
    for (auto [ksize, kidx] : reg[static_cast<size_t>(size)][static_cast<size_t>(idx)].kids) {
        if (ksize == 1) {
            t.items.push_back(TreeSpec::make_leaf());
        } else {
            Rational d = abs_depth + next_delta();
            t.items.push_back(build_spec(reg, ksize, kidx, d, next_delta));
        }
    }
    return t;
}

uint64_t text_seed(const std::string& text) {
    return std::hash<std::string>{}(text);
}

} // namespace

std::vector<std::pair<std::string, long long>> enumerate_texts(const EnumSpec& spec) {
    spec.validate();
    Registry reg = build_registry(spec.max_roots);
    const size_t ndeltas = spec.rel_depths.size();

    std::vector<std::pair<std::string, long long>> all;
    std::unordered_set<std::string> seen;
    for (int n = 5; n <= spec.max_roots; ++n) {
        for (size_t si = 0; si < reg[static_cast<size_t>(n)].size(); ++si) {
            const int slots = internal_count(reg, n, static_cast<int>(si)) - 1;
            size_t combos = 1;
            for (int i = 0; i < slots; ++i)
                combos *= ndeltas;
            for (size_t combo = 0; combo < combos; ++combo) {
                for (long long dr : spec.top_depths) {
                    size_t digits = combo;
                    auto next_delta = [&]() {
                        Rational d(static_cast<long>(spec.rel_depths[digits % ndeltas]));
                        digits /= ndeltas;
                        return d;
                    };
                    TreeSpec top = build_spec(reg, n, static_cast<int>(si),
                                              Rational(static_cast<long>(dr)), next_delta);
                    ClusterPicture pic = ClusterPicture::from_tree(top, Rational(0));
                    if (!seen.insert(pic.canonical_text()).second)
                        continue;
                    for (long long vcf : spec.vcfs)
                        all.emplace_back(pic.canonical_text(), vcf);
                }
            }
        }
    }

    size_t want = all.size();
    if (spec.sample)
        want = std::min(*spec.sample, all.size());
    else if (all.size() > spec.cap)
        want = spec.cap;
    if (want < all.size()) {
        std::mt19937_64 rng(spec.seed.value_or(0));
        for (size_t i = 0; i < want; ++i) {
            std::uniform_int_distribution<size_t> pick(i, all.size() - 1);
            std::swap(all[i], all[pick(rng)]);
        }
        all.resize(want);
    }
    return all;
}

void enumerate_pictures(const EnumSpec& spec,
                        const std::function<void(const ClusterPicture&)>& fn) {
    for (const auto& [text, vcf] : enumerate_texts(spec))
        fn(parse_picture(text, Rational(static_cast<long>(vcf))));
}

std::vector<CheckFailure> cross_validate(const ClusterPicture& pic, uint64_t seed) {
    std::vector<CheckFailure> fails;
    const std::string text = pic.canonical_text();
    auto fail = [&](const std::string& identity, const std::string& expected,
                    const std::string& got) {
        fails.push_back({text, identity, expected, got});
    };
    auto expect_eq = [&](const std::string& identity, const Rational& expected,
                         const Rational& got) {
        if (expected != got)
            fail(identity, expected.str(), got.str());
    };

    try {
        pic.check_well_formed();
    } catch (const std::exception& e) {
        fail("well_formed", "well-formed tree", e.what());
        return fails;
    }

    const NodeId top = pic.top();
    const std::vector<NodeId> clusters = pic.proper_clusters();

    for (NodeId s : clusters)
        expect_eq("nu_equality[" + pic.path_label(s) + "]", pic.nu_direct(s), pic.nu(s));

    for (NodeId s : clusters)
        for (int r = 0; r < pic.root_count(); ++r) {
            NodeId m = pic.meet(pic.leaf_node(r), s);
            Rational path_sum = pic.depth(top);
            for (NodeId cur = m; cur != top; cur = pic.parent(cur))
                path_sum += pic.rel_depth(cur);
            expect_eq("meet_depth_path[" + pic.path_label(s) + ",r" + std::to_string(r) + "]",
                      pic.depth(m), path_sum);
        }

    bool basis_domain = pic.genus() >= 2 && pic.vcf().sign() >= 0;
    for (NodeId s : clusters)
        if (pic.depth(s).sign() < 0)
            basis_domain = false;
    if (!basis_domain)
        return fails;

    const Rational l8 = lambda8(pic);

    BasisResult basis = basis_sequence(pic);
    expect_eq("sum_e_equals_lambda8", l8, Rational(8) * basis.sum_e());

    std::map<NodeId, int> gamma = gamma_counts(pic, basis);
    for (NodeId s : clusters)
        expect_eq("gamma_law[" + pic.path_label(s) + "]",
                  Rational((pic.size(s) - 1) / 2), Rational(gamma[s]));

    for (size_t i = 0; i < basis.steps.size(); ++i) {
        const BasisStep& st = basis.steps[i];
        const BasisTraceStep& tr = basis.trace[i];
        for (const auto& [s, v] : tr.values) {
            if (st.exponent < v)
                fail("maximality[step " + std::to_string(i) + "," + pic.path_label(s) + "]",
                     "e_i >= " + v.str(), st.exponent.str());
            if (s == st.cluster && st.exponent != v)
                fail("chosen_value[step " + std::to_string(i) + "]", v.str(),
                     st.exponent.str());
            // nested-tie rule: the choice is maximal under inclusion
            if (v == st.exponent && s != st.cluster && pic.contains(s, st.cluster))
                fail("nested_tie[step " + std::to_string(i) + "]",
                     "choice not inside co-maximal " + pic.path_label(s),
                     pic.path_label(st.cluster));
        }
        if (i > 0 && basis.steps[i].exponent > basis.steps[i - 1].exponent)
            fail("monotone_e[step " + std::to_string(i) + "]",
                 "e_" + std::to_string(i) + " <= e_" + std::to_string(i - 1),
                 basis.steps[i].exponent.str());
    }

    for (uint64_t run = 0; run < 2; ++run) {
        BasisResult shuffled = basis_sequence(pic, TieBreak::Randomized, seed + run);
        expect_eq("random_tie_sum_e", basis.sum_e(), shuffled.sum_e());
        std::map<NodeId, int> gamma2 = gamma_counts(pic, shuffled);
        if (gamma2 != gamma)
            fail("random_tie_gamma", "gamma counts of the canonical sequence",
                 "different counts under randomized ties");
    }

    if (pic.vcf().is_zero() && pic.depth(top).is_zero() && pic.root_count() % 2 == 0)
        expect_eq("kausz_reduction", l8, kausz_lambda8(pic));

    auto check_transform = [&](const TransformSpec& sp) {
        try {
            ClusterPicture after = apply_transform(pic, sp);
            after.check_well_formed();
            expect_eq("delta_law[" + sp.str() + "]", predicted_lambda8_delta(pic, sp),
                      lambda8(after) - l8);
        } catch (const std::exception& e) {
            fail("transform_error[" + sp.str() + "]", "no exception", e.what());
        }
    };

    for (long long t : {1LL, -1LL}) {
        TransformSpec sp;
        sp.kind = TransformSpec::Kind::Deepen;
        sp.t = t;
        check_transform(sp);
    }
    if (pic.root_count() % 2 == 1 && pic.depth(top).is_integer()) {
        TransformSpec sp;
        sp.kind = TransformSpec::Kind::AddRoot;
        check_transform(sp);
    }
    if (pic.root_count() % 2 == 0) {
        const auto& kids = pic.children(top);
        for (size_t k = 0; k < kids.size(); ++k) {
            if (!pic.is_proper(kids[k]))
                continue;
            Rational delta = pic.rel_depth(kids[k]);
            std::vector<long long> ts = {1};
            if (delta.is_integer() && delta != Rational(1)) {
                // also exercise the dissolution case t = delta_S
                ts.push_back(static_cast<long long>(mpz_get_si(delta.num().get_mpz_t())));
            }
            for (long long t : ts) {
                TransformSpec sp;
                sp.kind = TransformSpec::Kind::Redistribute;
                sp.path = "R/" + std::to_string(k);
                sp.t = t;
                check_transform(sp);
            }
        }
    }
    for (long long m : {1LL, -1LL}) {
        TransformSpec sp;
        sp.kind = TransformSpec::Kind::ScaleLeading;
        sp.m = m;
        check_transform(sp);
    }

    try {
        ClusterPicture reparsed = parse_picture(text, pic.vcf());
        if (!picture_equal(reparsed, pic))
            fail("parse_print_roundtrip", text, reparsed.canonical_text());
    } catch (const std::exception& e) {
        fail("parse_print_roundtrip", text, e.what());
    }

    return fails;
}

CheckReport run_check(const EnumSpec& spec, int jobs) {
    const std::vector<std::pair<std::string, long long>> items = enumerate_texts(spec);
    const uint64_t base_seed = spec.seed.value_or(0);

    auto validate_range = [&](size_t lo, size_t hi, std::vector<CheckFailure>& out) {
        for (size_t i = lo; i < hi; ++i) {
            const auto& [text, vcf] = items[i];
            ClusterPicture pic = parse_picture(text, Rational(static_cast<long>(vcf)));
            std::vector<CheckFailure> f = cross_validate(pic, base_seed ^ text_seed(text));
            out.insert(out.end(), f.begin(), f.end());
        }
    };

    CheckReport report;
    report.pictures_checked = items.size();
    if (jobs <= 1) {
        validate_range(0, items.size(), report.failures);
    } else {
        const size_t nthreads = std::min<size_t>(static_cast<size_t>(jobs), items.size());
        std::vector<std::vector<CheckFailure>> buckets(nthreads);
        std::vector<std::thread> threads;
        const size_t chunk = (items.size() + nthreads - 1) / std::max<size_t>(nthreads, 1);
        for (size_t t = 0; t < nthreads; ++t) {
            size_t lo = t * chunk;
            size_t hi = std::min(items.size(), lo + chunk);
            threads.emplace_back(
                [&, lo, hi, t] { validate_range(lo, hi, buckets[t]); });
        }
        for (auto& th : threads)
            th.join();
        for (auto& b : buckets)
            report.failures.insert(report.failures.end(), b.begin(), b.end());
    }
    std::sort(report.failures.begin(), report.failures.end(),
              [](const CheckFailure& a, const CheckFailure& b) {
                  return std::tie(a.picture, a.identity, a.expected, a.got) <
                         std::tie(b.picture, b.identity, b.expected, b.got);
              });
    return report;
}

} // namespace cpic
