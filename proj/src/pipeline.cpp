#include "morsedyn/pipeline.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "morsedyn/constants.hpp"

namespace morsedyn {

namespace fs = std::filesystem;

Pipeline prepare(const ScenarioConfig& cfg) {
    Pipeline pipe;
    pipe.params = derive_params(cfg.molecule.mass_u, cfg.molecule.D0_eV,
                                cfg.molecule.alpha_per_nm);
    if (cfg.truncation.M <= pipe.params.bound_top() + 1)
        throw std::runtime_error("truncation M must exceed the bound-state count " +
                                 std::to_string(pipe.params.n_bound));

    if (!cfg.dipole.terms.empty()) {
        pipe.model.terms = cfg.dipole.terms;
        pipe.model.effective_charge_C =
            *cfg.dipole.effective_charge_e * constants::elementary_charge_C;
    } else {
        DipoleSamples samples = load_dipole_samples(cfg.dipole.fit_file);
        if (cfg.dipole.equilibrium_nm) samples.equilibrium_nm = *cfg.dipole.equilibrium_nm;
        const DipoleFit fit =
            fit_dipole(samples, pipe.params, cfg.dipole.fit_terms, cfg.dipole.fit_fix_d_zero);
        pipe.model = fit.model;
        if (cfg.dipole.effective_charge_e)
            pipe.model.effective_charge_C =
                *cfg.dipole.effective_charge_e * constants::elementary_charge_C;
    }
    pipe.q_e_C = pipe.model.effective_charge_C;
    return pipe;
}

std::string cache_key(const MorseParameters& p, const DipoleModel& model, int N, int M) {
    char buf[128];
    std::string text;
    std::snprintf(buf, sizeof buf, "%.17g|%.17g|%.17g|%d|%d", p.mass_u, p.well_depth_eV,
                  p.range_per_nm, N, M);
    text = buf;
    for (const DipoleTerm& t : model.terms) {
        std::snprintf(buf, sizeof buf, "|%.17g,%.17g,%.17g", t.a, t.d, t.gamma);
        text += buf;
    }
    // FNV-1a, 64 bit
    std::uint64_t h = 1469598103934665603ULL;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

constexpr char kMagic[8] = {'M', 'D', 'R', 'S', '0', '0', '0', '1'};

void put_u64(std::ofstream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint64_t get_u64(std::ifstream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

} // namespace

void save_reduced(const std::string& path, const ReducedSystem& sys) {
    fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write cache file: " + path);
    out.write(kMagic, sizeof kMagic);
    put_u64(out, static_cast<std::uint64_t>(sys.size()));
    put_u64(out, static_cast<std::uint64_t>(sys.n_bound));
    const double meta[6] = {sys.params.mass_u, sys.params.well_depth_eV,
                            sys.params.range_per_nm, sys.params.omega0, sys.params.s,
                            sys.params.sigma};
    out.write(reinterpret_cast<const char*>(meta), sizeof meta);
    out.write(reinterpret_cast<const char*>(sys.energies.data()),
              static_cast<std::streamsize>(sys.energies.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(sys.mu.data()),
              static_cast<std::streamsize>(static_cast<std::size_t>(sys.mu.rows()) *
                                           sys.mu.cols() * sizeof(double)));
    if (!out) throw std::runtime_error("short write on cache file: " + path);
}

ReducedSystem load_reduced(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open cache file: " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw std::runtime_error("not a reduced-system cache file: " + path);
    const auto size = static_cast<int>(get_u64(in));
    const auto n_bound = static_cast<int>(get_u64(in));
    double meta[6];
    in.read(reinterpret_cast<char*>(meta), sizeof meta);

    ReducedSystem sys;
    sys.params.mass_u = meta[0];
    sys.params.well_depth_eV = meta[1];
    sys.params.range_per_nm = meta[2];
    sys.params.omega0 = meta[3];
    sys.params.s = meta[4];
    sys.params.sigma = meta[5];
    sys.params.n_bound = n_bound;
    sys.n_bound = n_bound;
    sys.energies.resize(size);
    in.read(reinterpret_cast<char*>(sys.energies.data()),
            static_cast<std::streamsize>(sys.energies.size() * sizeof(double)));
    sys.mu = Matrix(size, size);
    in.read(reinterpret_cast<char*>(sys.mu.data()),
            static_cast<std::streamsize>(static_cast<std::size_t>(size) * size *
                                         sizeof(double)));
    if (!in) throw std::runtime_error("truncated cache file: " + path);
    return sys;
}

ReducedSystem reduced_system(const ScenarioConfig& cfg, const Pipeline& pipe, int N, int M,
                             const std::string& cache_dir) {
    std::string path;
    if (!cache_dir.empty()) {
        path = (fs::path(cache_dir) / (cache_key(pipe.params, pipe.model, N, M) + ".bin"))
                   .string();
        if (fs::exists(path)) {
            ReducedSystem sys = load_reduced(path);
            if (sys.size() == M + 1) return sys;
        }
    }

    const TridiagonalMatrix h0 = h0_matrix(pipe.params, N);
    const Matrix mu_full = assemble_mu(pipe.params, pipe.model, N);
    const SpectralBasis basis = diagonalize(pipe.params, h0);
    ReducedSystem sys = reduce(basis, mu_full, M);
    (void)cfg;

    if (!path.empty()) save_reduced(path, sys);
    return sys;
}

} // namespace morsedyn
