#include "onrefl/cohomology.hpp"
#include "onrefl/cubic_enum.hpp"
#include "onrefl/local_cubic.hpp"
#include "onrefl/local_quad.hpp"
#include "onrefl/quad_refl.hpp"
#include "onrefl/record.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

using namespace onrefl;

namespace {

using Task = std::function<std::vector<VerificationRecord>()>;

struct Bounds {
    i64 nmax = 100;
    i64 Dmax = 50;
    i64 pmax = 200;
    i64 X = 500;
    i64 kmax = 2;
    int e = -1;
    int emax = 4;
    int order = 40;
    int dmax = 8;
    int vmax = 8;
    int nmax_cubic = 60;
    std::vector<i64> q;
    std::vector<i64> primes;
    std::vector<i64> N;
};

bool is_prime_small(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Task one(std::function<VerificationRecord()> f) {
    return [f] { return std::vector<VerificationRecord>{f()}; };
}

// q = p^f, or throws
std::pair<i64, int> prime_power(i64 q) {
    for (i64 p = 2; p <= q; ++p) {
        if (q % p) continue;
        int f = 0;
        i64 r = q;
        while (r % p == 0) r /= p, ++f;
        if (r != 1) break;
        return {p, f};
    }
    throw std::invalid_argument("q must be a prime power: " + std::to_string(q));
}

std::vector<i64> or_default(const std::vector<i64>& v, std::vector<i64> d) { return v.empty() ? d : v; }

std::vector<Task> quad_on_tasks(const Bounds& b) {
    std::vector<Task> t;
    for (i64 n = 1; n <= b.nmax; ++n)
        for (i64 s : {n, -n}) t.push_back(one([s] { return verify_quadratic_on(s); }));
    return t;
}

std::vector<Task> legendre_tasks(const Bounds& b) {
    std::vector<Task> t;
    for (i64 p1 = 5; p1 < b.pmax; p1 += 4)
        for (i64 p3 = 3; p3 < b.pmax; p3 += 4)
            if (is_prime_small(p1) && is_prime_small(p3)) t.push_back(one([=] { return verify_legendre_identity(p1, p3); }));
    return t;
}

std::vector<Task> cubic_on_tasks(const Bounds& b) {
    std::vector<Task> t;
    for (i64 D = -b.Dmax; D <= b.Dmax; ++D)
        if (D != 0) t.push_back(one([D] { return verify_cubic_on(D); }));
    return t;
}

std::vector<Task> disc_reduce_tasks(const Bounds& b) {
    std::vector<Task> t;
    for (i64 p : or_default(b.primes, {2, 5, 7})) {
        if (p == 3 || !is_prime_small(p)) throw std::invalid_argument("primes must be primes other than 3");
        for (i64 D = -b.Dmax; D <= b.Dmax; ++D) {
            if (D == 0) continue;
            if (D % p != 0) t.push_back(one([=] { return verify_thm72(D, p); }));
            // the stated identity needs a tame 2-adic quadratic part
            if (D % (p * p) == 0) t.push_back(one([=] { return verify_disc_reduction(D, p, wild_at(D, p)); }));
        }
    }
    for (i64 q : or_default(b.q, {10, 35})) {
        for (i64 k = -b.kmax; k <= b.kmax; ++k) {
            const i64 D = k * q * q;
            if (D == 0 || wild_at(D, 2)) continue;
            for (i64 s = 0; s < q; ++s) t.push_back(one([=] { return verify_disc_reduction_multi(D, q, s); }));
        }
    }
    return t;
}

std::vector<Task> z1n_tasks(const Bounds& b) {
    std::vector<Task> t;
    for (i64 N : or_default(b.N, {2, 5, 15})) {
        for (i64 D = -b.Dmax; D <= b.Dmax; ++D) {
            if (D == 0) continue;
            bool ok = true;
            for (i64 p = 2; p <= N; ++p)
                if (N % p == 0 && is_prime_small(p) && !fundamental_at(D, p)) ok = false;
            if (ok) t.push_back(one([=] { return z1n_record(D, N); }));
        }
    }
    t.push_back(one([] {
        std::vector<Rational> lhs, rhs;
        for (const auto& f : listed_z15_forms()) {
            lhs.push_back(disc_rational_cubic(f[0], f[1], f[2], f[3]));
            rhs.emplace_back(-3);
        }
        return make_record("z15-forms", "count=" + std::to_string(lhs.size()), lhs, rhs);
    }));
    t.push_back(one([] {
        return make_record("z1n-weight", "D=1,N=15", {class_number(1, {LocalSelector::simple_roots_composite(15)})},
                           {Rational(3, 2)});
    }));
    return t;
}

std::vector<Task> local_quad_tasks(const Bounds& b) {
    std::vector<Task> t;
    const auto qs = or_default(b.q, {2, 3, 4, 5, 9, 27});
    const int e_lo = b.e >= 0 ? b.e : 0, e_hi = b.e >= 0 ? b.e : b.emax;
    for (i64 q : qs) {
        prime_power(q);
        for (int e = e_lo; e <= e_hi; ++e)
            for (int s = 0; s <= e; ++s) {
                const int order = b.order;
                t.push_back(one([=] { return verify_local_quad_duality(q, e, s, order); }));
                if (e >= 1) t.push_back(one([=] { return verify_gf_closed_form(q, e, s, order); }));
            }
        t.push_back(one([=] { return verify_quad_table(q); }));
    }
    for (i64 p = 2; p <= b.pmax; ++p) {
        if (!is_prime_small(p)) continue;
        const int e = p == 2 ? 1 : 0;
        for (int s = 0; s <= e; ++s)
            for (int vI = 0; vI <= b.vmax; ++vI) {
                t.push_back(one([=] { return verify_local_quad_duality_direct(p, s, vI); }));
                if (p <= 13) t.push_back(one([=] { return verify_zone_partition(p, s, vI); }));
            }
    }
    return t;
}

struct OracleAlgebra {
    std::string label;
    CubicRingTable R;
    i64 p;
    SplittingType sigma;
    int dmax, tmax;
};

std::vector<OracleAlgebra> oracle_algebras() {
    using S = SplittingType;
    return {
        {"Z^3", table_split(), 3, S::S111, 8, 1},
        {"ZxZ[sqrt3]", table_times_quadratic(3), 3, S::S1_2_1, 8, 1},
        {"x^3-x-1", table_monogenic(0, -1, -1), 3, S::S3, 8, 1},
        {"x^3+3x+3", table_monogenic(0, 3, 3), 3, S::S1_3, 8, 1},
        {"x^3-3", table_monogenic(0, 0, -3), 3, S::S1_3, 8, 1},
        {"Z^3", table_split(), 5, S::S111, 6, 0},
        {"ZxZ[sqrt2]", table_times_quadratic(2), 5, S::S12, 6, 0},
        {"x^3+x+1", table_monogenic(0, 1, 1), 5, S::S3, 6, 0},
        {"ZxZ[sqrt5]", table_times_quadratic(5), 5, S::S1_2_1, 6, 0},
        {"x^3-5", table_monogenic(0, 0, -5), 5, S::S1_3, 6, 0},
    };
}

std::vector<Task> local_cubic_tasks(const Bounds& b) {
    std::vector<Task> t;
    const int e_lo = b.e >= 0 ? b.e : 0, e_hi = b.e >= 0 ? b.e : b.emax;
    const int nmax = b.nmax_cubic;
    for (i64 q : or_default(b.q, {3, 9, 27})) {
        prime_power(q);
        for (int e = e_lo; e <= e_hi; ++e)
            for (int nT = 0; nT <= 1; ++nT) {
                t.push_back(one([=] { return verify_family_zeta_consistency(nT, e, q, nmax); }));
                for (int s = 0; s <= e; ++s) {
                    t.push_back(one([=] { return verify_involution_identities(q, e, s, nT, nmax); }));
                    t.push_back(one([=] { return verify_local_cubic_duality(q, e, s, nT, nmax); }));
                }
            }
    }
    for (const auto& a : oracle_algebras())
        t.push_back(one([a] { return verify_subring_oracle(a.label, a.R, a.p, a.sigma, a.dmax, a.tmax); }));
    return t;
}

std::vector<Task> tame_cubic_tasks(const Bounds& b) {
    std::vector<Task> t;
    const int dmax = b.dmax;
    for (i64 p : or_default(b.primes, {2, 5, 7, 11, 13})) {
        if (p == 3 || !is_prime_small(p)) throw std::invalid_argument("primes must be primes other than 3");
        const bool m3 = p % 3 == 1;
        for (bool Ds : {false, true})
            for (bool m3Ds : {false, true}) {
                // -3 a square forces the two flags to agree; otherwise they cannot both hold
                if (m3 ? Ds != m3Ds : Ds && m3Ds) continue;
                // with both flags false the ramification of T is a free choice only when -3 is a square
                for (bool ram : {false, true})
                    if (!ram || (!Ds && !m3Ds && m3)) t.push_back(one([=] { return verify_tame_duality(p, Ds, m3Ds, ram, dmax); }));
            }
        for (int nT = 0; nT <= 1; ++nT) {
            const int nmax = b.nmax_cubic;
            t.push_back(one([=] { return verify_family_zeta_consistency(nT, 0, p, nmax); }));
            t.push_back(one([=] { return verify_local_cubic_duality(p, 0, 0, nT, nmax); }));
            t.push_back(one([=] { return verify_involution_identities(p, 0, 0, nT, nmax); }));
        }
    }
    return t;
}

std::vector<Task> zeta_tasks(const Bounds& b) {
    const i64 X = b.X;
    return {[X] { return verify_shintani(X); }};
}

std::vector<Task> levels_tasks(const Bounds& b) {
    std::vector<Task> t;
    std::vector<std::pair<i64, int>> grid;
    if (!b.q.empty()) {
        for (i64 q : b.q) grid.emplace_back(q, b.e >= 0 ? b.e : 1);
    } else {
        grid = {{2, 1}, {3, 1}, {5, 1}, {9, 2}};
    }
    for (auto [q, e] : grid) {
        const auto [p, f] = prime_power(q);
        for (int h0 : {1, 2, 3})
            for (int h0d : {1, 2, 3})
                t.push_back([=] { return verify_model_identities(build_generic_model(p, f, e, h0, h0d)); });
        if (f == 1 && e == (p == 2 ? 1 : 0))
            t.push_back([p = p] { return verify_model_identities(build_square_class_model(p)); });
    }
    if (b.q.empty())
        for (i64 p : {2, 3, 5, 7, 13}) t.push_back([p] { return verify_model_identities(build_square_class_model(p)); });
    return t;
}

const std::map<std::string, std::function<std::vector<Task>(const Bounds&)>>& suites() {
    static const std::map<std::string, std::function<std::vector<Task>(const Bounds&)>> m{
        {"quad-on", quad_on_tasks},         {"legendre", legendre_tasks},       {"cubic-on", cubic_on_tasks},
        {"disc-reduce", disc_reduce_tasks}, {"z1n", z1n_tasks},                 {"local-quad", local_quad_tasks},
        {"local-cubic", local_cubic_tasks}, {"tame-cubic", tame_cubic_tasks}, {"zeta", zeta_tasks},
        {"levels", levels_tasks},
    };
    return m;
}

// compares digit runs numerically, so n=9 sorts before n=10 and -5 before -40
bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool neg_a = a[i] == '-' && i + 1 < a.size() && std::isdigit(static_cast<unsigned char>(a[i + 1]));
        const bool neg_b = b[j] == '-' && j + 1 < b.size() && std::isdigit(static_cast<unsigned char>(b[j + 1]));
        const bool da = neg_a || std::isdigit(static_cast<unsigned char>(a[i]));
        const bool db = neg_b || std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t ei = i + neg_a, ej = j + neg_b;
            while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
            while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
            const Integer x(a.substr(i, ei - i)), y(b.substr(j, ej - j));
            if (x != y) return x < y;
            i = ei, j = ej;
            continue;
        }
        if (a[i] != b[j]) return a[i] < b[j];
        ++i, ++j;
    }
    return a.size() - i < b.size() - j;
}

std::vector<VerificationRecord> run_tasks(const std::vector<Task>& tasks, unsigned jobs) {
    std::vector<std::vector<VerificationRecord>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            try {
                results[i] = tasks[i]();
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    std::vector<VerificationRecord> out;
    for (auto& v : results)
        for (auto& r : v) out.push_back(std::move(r));
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.theorem != y.theorem) return x.theorem < y.theorem;
        return natural_less(x.params, y.params);
    });
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification sweeps for reflection identities of quadratic and cubic forms"};
    std::string suite, format = "tsv", out, cache;
    unsigned jobs = 1;
    bool timing = false, list = false;
    Bounds b;
    app.add_option("--suite", suite, "suite name (see --list)");
    app.add_flag("--list", list, "print the suite names and exit");
    app.add_option("--format", format, "tsv or jsonl")->check(CLI::IsMember({"tsv", "jsonl", "json-lines"}));
    app.add_option("--out", out, "output file (default stdout)");
    app.add_option("--cache-dir", cache, "orbit cache directory (overrides ONREFL_CACHE_DIR)");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--timing", timing, "fill the ms column with wall-clock times");
    app.add_option("--nmax", b.nmax, "quad-on: |n| bound")->check(CLI::PositiveNumber);
    app.add_option("--Dmax", b.Dmax, "cubic-on, disc-reduce, z1n: |D| bound")->check(CLI::PositiveNumber);
    app.add_option("--pmax", b.pmax, "legendre: prime bound; local-quad: bound for explicit primes")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--X", b.X, "zeta: |disc| bound")->check(CLI::PositiveNumber);
    app.add_option("--kmax", b.kmax, "disc-reduce: D = k q^2 with |k| <= kmax")->check(CLI::NonNegativeNumber);
    app.add_option("--q", b.q, "residue field sizes (local-quad, local-cubic, levels) or moduli (disc-reduce)");
    app.add_option("--e", b.e, "single ramification index")->check(CLI::NonNegativeNumber);
    app.add_option("--emax", b.emax, "largest ramification index")->check(CLI::NonNegativeNumber);
    app.add_option("--order", b.order, "local-quad: series order")->check(CLI::PositiveNumber);
    app.add_option("--dmax", b.dmax, "tame-cubic: largest discriminant valuation")->check(CLI::NonNegativeNumber);
    app.add_option("--vmax", b.vmax, "local-quad: largest vI in the explicit check")->check(CLI::NonNegativeNumber);
    app.add_option("--ncubic", b.nmax_cubic, "local-cubic, tame-cubic: largest n")->check(CLI::PositiveNumber);
    app.add_option("--primes", b.primes, "disc-reduce, tame-cubic: primes");
    app.add_option("--N", b.N, "z1n: moduli");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& [name, fn] : suites()) std::cout << name << '\n';
        return 0;
    }
    const auto it = suites().find(suite);
    if (it == suites().end()) {
        std::cerr << "unknown suite '" << suite << "'; use --list\n";
        return 2;
    }
    if (!cache.empty()) set_cache_dir(cache);
    const ReportFormat fmt = format == "tsv" ? ReportFormat::Tsv : ReportFormat::JsonLines;

    std::vector<VerificationRecord> records;
    try {
        records = run_tasks(it->second(b), jobs);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }

    std::ofstream file;
    if (!out.empty()) {
        file.open(out, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open " << out << '\n';
            return 2;
        }
    }
    std::ostream& os = out.empty() ? std::cout : file;
    emit(os, records, fmt, timing);
    os.flush();
    if (!os) {
        std::cerr << "write failed\n";
        return 2;
    }
    const auto failed = std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; });
    if (failed) std::cerr << failed << " of " << records.size() << " records failed\n";
    return failed ? 1 : 0;
}
