#include "clres/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace clres {

void BenchParams::validate() const {
    if (n_props < 1) throw std::invalid_argument("N must be at least 1");
    if (n_agents < 1) throw std::invalid_argument("A must be at least 1");
    if (n_agents > 20) throw std::invalid_argument("A must be at most 20");
    if (n_conjuncts < 1) throw std::invalid_argument("L must be at least 1");
    if (!(probability >= 0.0 && probability <= 1.0))
        throw std::invalid_argument("P must lie in [0, 1]");
}

std::string BenchParams::set_name() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%u-%u-%03u-%u", n_props, n_agents, n_conjuncts,
                  modal_degree);
    return buf;
}

std::uint32_t uniform_below(std::mt19937& rng, std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below needs n >= 1");
    if (n == 1) return 0;
    const std::uint64_t span = std::uint64_t{1} << 32;
    const std::uint32_t limit = static_cast<std::uint32_t>(span - span % n);
    for (;;) {
        std::uint32_t v = rng();
        if (limit == 0 || v < limit) return v % n;
    }
}

bool bernoulli(std::mt19937& rng, double p) {
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(std::llround(p * 4294967296.0));
    return static_cast<std::uint64_t>(rng()) < threshold;
}

namespace {

Formula random_prop(const BenchParams& params, std::mt19937& rng) {
    return Formula::prop("p" + std::to_string(uniform_below(rng, params.n_props) + 1));
}

Formula random_clause(const BenchParams& params, unsigned degree, std::mt19937& rng);

Formula random_atom(const BenchParams& params, unsigned degree, std::mt19937& rng) {
    if (degree == 0 || !bernoulli(rng, params.probability)) return random_prop(params, rng);
    std::uint32_t mask = uniform_below(rng, std::uint32_t{1} << params.n_agents);
    std::vector<Agent> members;
    for (unsigned i = 0; i < params.n_agents; ++i)
        if (mask & (std::uint32_t{1} << i)) members.push_back(i + 1);
    return Formula::coop(Coalition(std::move(members)), random_clause(params, degree - 1, rng));
}

Formula random_literal(const BenchParams& params, unsigned degree, std::mt19937& rng) {
    bool negate = bernoulli(rng, 0.5);
    Formula atom = random_atom(params, degree, rng);
    return negate ? Formula::neg(std::move(atom)) : atom;
}

Formula random_clause(const BenchParams& params, unsigned degree, std::mt19937& rng) {
    Formula f = random_literal(params, degree, rng);
    for (int i = 1; i < 3; ++i)
        f = Formula::disj(std::move(f), random_literal(params, degree, rng));
    return f;
}

std::mt19937 file_rng(const BenchParams& params, unsigned index) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(params.seed),
        static_cast<std::uint32_t>(params.seed >> 32),
        params.n_props,
        params.n_agents,
        params.n_conjuncts,
        params.modal_degree,
        static_cast<std::uint32_t>(std::llround(params.probability * 1000000.0)),
        index,
    };
    return std::mt19937(seq);
}

}  // namespace

Formula gen_formula(const BenchParams& params, std::mt19937& rng) {
    params.validate();
    Formula f = random_clause(params, params.modal_degree, rng);
    for (unsigned i = 1; i < params.n_conjuncts; ++i)
        f = Formula::conj(std::move(f), random_clause(params, params.modal_degree, rng));
    return f;
}

Formula gen_formula_indexed(const BenchParams& params, unsigned index) {
    std::mt19937 rng = file_rng(params, index);
    return gen_formula(params, rng);
}

std::filesystem::path gen_suite(const BenchParams& params, unsigned count,
                                const std::filesystem::path& out_dir) {
    params.validate();
    std::filesystem::path set_dir = out_dir / params.set_name();
    std::filesystem::create_directories(set_dir);

    for (unsigned i = 0; i < count; ++i) {
        Formula f = gen_formula_indexed(params, i);
        std::ofstream out(set_dir / ("problem_" + std::to_string(i) + ".cl"));
        if (!out) throw std::runtime_error("cannot write into " + set_dir.string());
        out << "# " << params.set_name() << " problem " << i << " seed " << params.seed
            << "\n";
        out << render(f) << "\n";
    }

    std::filesystem::path manifest = set_dir / "manifest.txt";
    std::ofstream out(manifest);
    if (!out) throw std::runtime_error("cannot write " + manifest.string());
    out << "format_version=1\n";
    out << "n_props=" << params.n_props << "\n";
    out << "n_agents=" << params.n_agents << "\n";
    out << "n_conjuncts=" << params.n_conjuncts << "\n";
    out << "modal_degree=" << params.modal_degree << "\n";
    out << "probability=" << params.probability << "\n";
    out << "seed=" << params.seed << "\n";
    out << "count=" << count << "\n";
    return manifest;
}

}  // namespace clres
