// Command-line front end: correctness verification, operation counting and
// arithmetic-table reproduction, benchmarking in effective Gfops, and
// file-based symmetric products.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "fsyrk/count_model.hpp"
#include "fsyrk/fast_syrk.hpp"
#include "fsyrk/scaled_syrk.hpp"
#include "fsyrk/text_io.hpp"

using namespace fsyrk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string field = "fp";
    std::uint64_t prime = 131071;
    unsigned ext_degree = 4;
    std::size_t n = 64;
    std::size_t cols = 0;  // 0: same as n
    std::size_t threshold = 64;
    std::uint64_t rec = 0;  // 0: unlimited
    std::uint64_t seed = 0;
    std::string input;
    std::string output;
    std::string scaling;
    std::string acc_input;
    std::string alpha;
    std::string beta;
    bool table5 = false;
    bool csv = false;
    bool mirror = false;
    int cases = 100;
    std::size_t min_n = 256;
    std::size_t max_n = 2048;

    RecursionPolicy policy() const {
        return {threshold, rec == 0 ? kUnlimitedLevels : static_cast<std::size_t>(rec)};
    }
};

std::ostream& open_output(const Options& opt, std::ofstream& file) {
    if (opt.output.empty()) return std::cout;
    file.open(opt.output);
    if (!file) throw std::runtime_error("cannot open output file: " + opt.output);
    return file;
}

/// Calls fn with the constructed field descriptor.
template <class Fn>
int with_field(const Options& opt, Fn&& fn) {
    if (opt.field == "fp") return fn(PrimeField(opt.prime));
    if (opt.field == "fp2") return fn(QuadExtField(opt.prime));
    if (opt.field == "gf2k") return fn(BinaryField(opt.ext_degree));
    if (opt.field == "complex") return fn(ComplexField{});
    throw CLI::ValidationError("--field must be one of fp, fp2, gf2k, complex");
}

// ----------------------------------------------------------------- verify

template <FieldType F>
bool verify_syrk_battery(const F& f, const Options& opt, double tol) {
    std::mt19937_64 rng(opt.seed);
    auto plan = make_syrk_plan(f, opt.policy());
    bool ok = true;
    for (int t = 0; t < opt.cases; ++t) {
        std::size_t n = 1 + rng() % opt.n;
        std::size_t k = 1 + rng() % (opt.cols ? opt.cols : opt.n);
        auto a = random_matrix(f, n, k, rng());
        OpCount ops;
        auto c = syrk_fast(f, a.view(), plan, ops);
        Matrix<F> ref(n, n);
        gemm_classical_nt(f, a.view(), a.view(), ref.view(), ops);
        ok &= lower_equal(f, c.view(), ref.view(), tol);
    }
    std::cout << (ok ? "PASS" : "FAIL") << " syrk_fast vs classical (" << opt.cases
              << " cases, " << f.name() << ")\n";
    return ok;
}

template <FieldType F>
bool verify_acc_battery(const F& f, const Options& opt, double tol) {
    std::mt19937_64 rng(opt.seed + 1);
    auto plan = make_syrk_plan(f, opt.policy());
    bool ok = true;
    const int cases = std::max(1, opt.cases / 4);
    for (int t = 0; t < cases; ++t) {
        std::size_t n = 1 + rng() % std::min<std::size_t>(opt.n, 96);
        std::size_t k = 1 + rng() % std::min<std::size_t>(opt.n, 96);
        auto alpha = f.random_element(rng);
        auto beta = f.random_element(rng);
        auto a = random_matrix(f, n, k, rng());
        auto c0 = random_matrix(f, n, n, rng());
        auto c = c0;
        OpCount ops;
        syrk_fast_acc(f, alpha, a.view(), beta, c.view(), plan, ops);
        Matrix<F> ref(n, n);
        gemm_classical_nt(f, a.view(), a.view(), ref.view(), ops);
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                auto want = f.add(f.mul(alpha, ref.at(i, j)), f.mul(beta, c0.at(i, j)));
                ok &= approx_eq(f, c.at(i, j), want, tol);
            }
    }
    std::cout << (ok ? "PASS" : "FAIL") << " syrk_fast_acc vs classical (" << cases
              << " cases, " << f.name() << ")\n";
    return ok;
}

template <class F>
bool verify_scaled_battery(const F& f, const Options& opt) {
    std::mt19937_64 rng(opt.seed + 2);
    auto plan = make_syrk_plan(f, opt.policy());
    bool ok = true;
    const int cases = std::max(1, opt.cases / 4);
    for (int t = 0; t < cases; ++t) {
        std::size_t m = 1 + rng() % 32;
        std::size_t n = 1 + rng() % 32;
        auto a = random_matrix(f, m, n, rng());
        std::vector<typename F::Element> d(n);
        for (auto& v : d) v = f.random_element(rng);
        OpCount ops;
        auto c = syrkd(f, a.view(), d, plan, ops);
        auto scaled = a;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i)
                scaled.at(i, j) = f.mul(scaled.at(i, j), d[j]);
        Matrix<F> ref(m, m);
        gemm_classical_nt(f, scaled.view(), a.view(), ref.view(), ops);
        ok &= lower_equal(f, c.view(), ref.view());
    }
    std::cout << (ok ? "PASS" : "FAIL") << " syrkd vs brute force (" << cases << " cases, "
              << f.name() << ")\n";
    return ok;
}

bool verify_herk_battery(const QuadExtField& f, const Options& opt) {
    std::mt19937_64 rng(opt.seed + 3);
    auto plan = make_herk_plan(f, opt.policy());
    bool ok = true;
    const int cases = std::max(1, opt.cases / 4);
    for (int t = 0; t < cases; ++t) {
        std::size_t n = 1 + rng() % std::min<std::size_t>(opt.n, 64);
        std::size_t k = 1 + rng() % std::min<std::size_t>(opt.n, 64);
        auto a = random_matrix(f, n, k, rng());
        OpCount ops;
        auto c = herk_fast(f, a.view(), plan, ops);
        Matrix<QuadExtField> ref(n, n);
        gemm_classical_nt(f, a.view(), a.view(), ref.view(), ops, /*conj_b=*/true);
        ok &= lower_equal(f, c.view(), ref.view());
    }
    std::cout << (ok ? "PASS" : "FAIL") << " herk_fast vs classical (" << cases << " cases, "
              << f.name() << ")\n";
    return ok;
}

bool verify_complex_methods(const Options& opt) {
    ComplexField f;
    std::mt19937_64 rng(opt.seed + 4);
    bool ok2m = true, ok3m = true;
    for (int t = 0; t < 8; ++t) {
        std::size_t n = 8 + rng() % 56;
        auto a = random_matrix(f, n, n, rng());
        OpCount ops;
        int products = 0;
        auto c = syrk_2m_complex(f, a.view(), ops, &products);
        Matrix<ComplexField> ref(n, n);
        gemm_classical_nt(f, a.view(), a.view(), ref.view(), ops);
        ok2m &= products == 2 && matrix_equal(f, c.view(), ref.view(), 1e-9);

        auto b = random_matrix(f, n, n, rng());
        auto g = gemm_3m_complex(f, a.view(), b.view(), ops);
        Matrix<ComplexField> ref2(n, n);
        gemm_classical(f, f.one(), a.view(), b.view(), f.zero(), ref2.view(), ops);
        ok3m &= matrix_equal(f, g.view(), ref2.view(), 1e-9);
    }
    std::cout << (ok2m ? "PASS" : "FAIL") << " 2M symmetric product (8 cases)\n";
    std::cout << (ok3m ? "PASS" : "FAIL") << " 3M general product (8 cases)\n";
    return ok2m && ok3m;
}

int cmd_verify(const Options& opt) {
    return with_field(opt, [&](auto f) {
        using Field = decltype(f);
        bool ok = true;
        if constexpr (std::is_same_v<Field, ComplexField>) {
            ok &= verify_syrk_battery(f, opt, 1e-9);
            ok &= verify_complex_methods(opt);
        } else if constexpr (std::is_same_v<Field, QuadExtField>) {
            ok &= verify_syrk_battery(f, opt, 0.0);
            ok &= verify_herk_battery(f, opt);
        } else if constexpr (std::is_same_v<Field, BinaryField>) {
            ok &= verify_syrk_battery(f, opt, 0.0);
            ok &= verify_acc_battery(f, opt, 0.0);
            ok &= verify_scaled_battery(f, opt);
        } else {
            ok &= verify_syrk_battery(f, opt, 0.0);
            ok &= verify_acc_battery(f, opt, 0.0);
            if (f.modulus() != 2) ok &= verify_scaled_battery(f, opt);
        }
        std::cout << (ok ? "PASS" : "FAIL") << " overall\n";
        return ok ? kExitOk : kExitVerifyFailed;
    });
}

// ------------------------------------------------------------------ count

int cmd_count(const Options& opt) {
    std::ofstream file;
    std::ostream& os = open_output(opt, file);
    if (opt.table5) {
        os << table5_csv();
        return kExitOk;
    }
    if (opt.n == 0 || (opt.n & (opt.n - 1)) != 0)
        throw CLI::ValidationError("count: --n must be a power of two");
    const unsigned rec = opt.rec == 0 ? 1 : static_cast<unsigned>(opt.rec);

    return with_field(opt, [&](auto f) {
        const int y = skew_orthogonal(f, 0).ycost;
        auto a = random_matrix(f, opt.n, opt.n, opt.seed);
        auto plan = make_syrk_plan(f, {2, rec});
        OpCount ops;
        auto c = syrk_fast(f, a.view(), plan, ops);
        (void)c;
        std::uint64_t tri =
            count({CountAlg::FastSyrk, opt.n, rec, y, HalfAddConvention::Triangular});
        std::uint64_t sq =
            count({CountAlg::FastSyrk, opt.n, rec, y, HalfAddConvention::SquareHalf});
        os << "n,rec,y,instrumented,analytic_triangular,analytic_squarehalf\n";
        os << opt.n << ',' << rec << ',' << y << ',' << ops.total() << ',' << tri << ',' << sq
           << '\n';
        return ops.total() == tri ? kExitOk : kExitVerifyFailed;
    });
}

// ------------------------------------------------------------------ bench

int cmd_bench(const Options& opt) {
    if (opt.field != "fp")
        throw CLI::ValidationError("bench: only --field fp is supported");
    PrimeField f(opt.prime);
    std::ofstream file;
    std::ostream& os = open_output(opt, file);
    os << "algorithm,n,seconds,effective_gfops\n";

    auto timed = [&](const char* name, std::size_t n, auto&& run) {
        auto start = std::chrono::steady_clock::now();
        run();
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        double gfops = static_cast<double>(n) * n * n / (1e9 * secs);
        os << name << ',' << n << ',' << secs << ',' << gfops << '\n';
    };

    for (std::size_t n = opt.min_n; n <= opt.max_n; n *= 2) {
        auto a = random_matrix(f, n, n, opt.seed + n);
        Matrix<PrimeField> c(n, n, 0);
        OpCount ops;
        timed("classical", n,
              [&] { syrk_classical(f, f.one(), a.view(), f.zero(), c.view(), ops); });
        timed("gemm_fold", n, [&] { gemm_classical_nt(f, a.view(), a.view(), c.view(), ops); });
        RecursionPolicy policy = opt.policy();
        timed("syrk_dc", n,
              [&] { syrk_dc_into(f, a.view(), c.view(), policy, policy.max_levels, ops); });
        auto plan = make_syrk_plan(f, policy);
        timed("syrk_fast", n, [&] { syrk_fast_into(f, a.view(), c.view(), plan, ops); });
    }
    return kExitOk;
}

// ------------------------------------------------------------------- syrk

int cmd_syrk(const Options& opt) {
    return with_field(opt, [&](auto f) {
        using Field = decltype(f);
        std::ifstream in(opt.input);
        if (!in) throw std::runtime_error("cannot open input file: " + opt.input);
        auto a = read_matrix(f, in);
        auto plan = make_syrk_plan(f, opt.policy(), opt.mirror);

        Matrix<Field> c(a.rows(), a.rows(), f.zero());
        OpCount ops;
        const bool accumulate =
            !opt.alpha.empty() || !opt.beta.empty() || !opt.acc_input.empty();
        if (accumulate && !opt.scaling.empty())
            throw CLI::ValidationError("--alpha/--beta/--acc cannot combine with --scaling");
        if (accumulate) {
            auto alpha = opt.alpha.empty() ? f.one() : f.parse(opt.alpha);
            auto beta = opt.beta.empty() ? f.zero() : f.parse(opt.beta);
            if (!opt.acc_input.empty()) {
                std::ifstream acc(opt.acc_input);
                if (!acc) throw std::runtime_error("cannot open --acc file: " + opt.acc_input);
                c = read_matrix(f, acc);
            }
            syrk_fast_acc(f, alpha, a.view(), beta, c.view(), plan, ops);
        } else if (!opt.scaling.empty()) {
            if constexpr (std::is_same_v<Field, PrimeField> ||
                          std::is_same_v<Field, BinaryField>) {
                std::ifstream sc(opt.scaling);
                if (!sc) throw std::runtime_error("cannot open scaling file: " + opt.scaling);
                auto b = read_block_diagonal(f, sc);
                c = syrkbd(f, a.view(), b, plan, ops);
                if (opt.mirror) mirror_lower_to_upper(f, c.view());
            } else {
                throw CLI::ValidationError(
                    "--scaling requires a prime or binary field (fp or gf2k)");
            }
        } else {
            syrk_fast_into(f, a.view(), c.view(), plan, ops);
        }
        if (!opt.mirror) {
            // scrub schedule residue so the written file is deterministic
            for (std::size_t i = 0; i < c.rows(); ++i)
                for (std::size_t j = i + 1; j < c.cols(); ++j) c.at(i, j) = f.zero();
        }
        std::ofstream file;
        std::ostream& os = open_output(opt, file);
        write_matrix(f, os, c.view());
        return kExitOk;
    });
}

// -------------------------------------------------------------- sos, nrsyf

int cmd_sos(const Options& opt, std::uint64_t value) {
    PrimeField f(opt.prime);
    auto [a, b] = f.sum_of_squares(value % opt.prime);
    std::cout << a << ' ' << b << '\n';
    return kExitOk;
}

int cmd_nrsyf(const Options& opt, std::uint64_t alpha, std::uint64_t beta) {
    PrimeField f(opt.prime);
    auto y = nrsyf(f, alpha % opt.prime, beta % opt.prime);
    std::cout << y[0] << ' ' << y[1] << '\n' << y[2] << ' ' << y[3] << '\n';
    return kExitOk;
}

void add_field_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--field", opt.field, "field kind: fp, fp2, gf2k, complex")
        ->check(CLI::IsMember({"fp", "fp2", "gf2k", "complex"}));
    cmd->add_option("--prime", opt.prime, "prime modulus for fp / fp2");
    cmd->add_option("--k", opt.ext_degree, "extension degree for gf2k");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fast symmetric rank-k update over finite fields and complex doubles"};
    app.require_subcommand(1);
    Options opt;
    std::uint64_t sos_value = 0, nr_alpha = 0, nr_beta = 0;

    auto* verify = app.add_subcommand("verify", "oracle-equivalence batteries");
    add_field_flags(verify, opt);
    verify->add_option("--n", opt.n, "max rows for random cases");
    verify->add_option("--cols", opt.cols, "max columns (defaults to --n)");
    verify->add_option("--cases", opt.cases, "random cases per battery");
    verify->add_option("--threshold", opt.threshold, "recursion threshold");
    verify->add_option("--rec", opt.rec, "recursion levels (0 = unlimited)");
    verify->add_option("--seed", opt.seed, "rng seed");

    auto* count_cmd = app.add_subcommand("count", "analytic and instrumented operation counts");
    add_field_flags(count_cmd, opt);
    count_cmd->add_flag("--table5", opt.table5, "emit the full arithmetic-table grid as CSV");
    count_cmd->add_option("--n", opt.n, "size (power of two)");
    count_cmd->add_option("--rec", opt.rec, "recursion levels");
    count_cmd->add_option("--seed", opt.seed, "rng seed");
    count_cmd->add_option("--output", opt.output, "write CSV here instead of stdout");
    count_cmd->add_flag("--csv", opt.csv, "CSV output (the default and only format)");

    auto* bench = app.add_subcommand("bench", "size sweep in effective Gfops");
    add_field_flags(bench, opt);
    bench->add_option("--min-n", opt.min_n, "first size of the sweep");
    bench->add_option("--max-n", opt.max_n, "last size of the sweep");
    bench->add_option("--threshold", opt.threshold, "recursion threshold");
    bench->add_option("--rec", opt.rec, "recursion levels (0 = unlimited)");
    bench->add_option("--seed", opt.seed, "rng seed");
    bench->add_option("--output", opt.output, "write CSV here instead of stdout");

    auto* syrk_cmd = app.add_subcommand("syrk", "file-based symmetric product");
    add_field_flags(syrk_cmd, opt);
    syrk_cmd->add_option("--input", opt.input, "input matrix file")->required();
    syrk_cmd->add_option("--output", opt.output, "output matrix file (default stdout)");
    syrk_cmd->add_option("--scaling", opt.scaling, "block-diagonal scaling file");
    syrk_cmd->add_option("--alpha", opt.alpha, "scale factor for A*A^T (accumulating form)");
    syrk_cmd->add_option("--beta", opt.beta, "scale factor for the initial C");
    syrk_cmd->add_option("--acc", opt.acc_input, "initial C for alpha*A*A^T + beta*C");
    syrk_cmd->add_flag("--mirror", opt.mirror, "write the full symmetric matrix");
    syrk_cmd->add_option("--threshold", opt.threshold, "recursion threshold");
    syrk_cmd->add_option("--rec", opt.rec, "recursion levels (0 = unlimited)");

    auto* sos_cmd = app.add_subcommand("sos", "sum-of-squares decomposition in F_p");
    sos_cmd->add_option("--prime", opt.prime, "odd prime modulus")->required();
    sos_cmd->add_option("--value", sos_value, "residue to decompose")->required();

    auto* nrsyf_cmd = app.add_subcommand("nrsyf", "symmetric factorization of two non-residues");
    nrsyf_cmd->add_option("--prime", opt.prime, "odd prime modulus")->required();
    nrsyf_cmd->add_option("--alpha", nr_alpha, "first non-residue")->required();
    nrsyf_cmd->add_option("--beta", nr_beta, "second non-residue")->required();

    try {
        app.parse(argc, argv);
        if (*verify) return cmd_verify(opt);
        if (*count_cmd) return cmd_count(opt);
        if (*bench) return cmd_bench(opt);
        if (*syrk_cmd) return cmd_syrk(opt);
        if (*sos_cmd) return cmd_sos(opt, sos_value);
        if (*nrsyf_cmd) return cmd_nrsyf(opt, nr_alpha, nr_beta);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
