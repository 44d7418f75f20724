#include "wolb/sweep.hpp"

#include <atomic>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wolb/characters.hpp"
#include "wolb/dynamics.hpp"
#include "wolb/report.hpp"
#include "wolb/structure.hpp"

namespace wolb {

namespace {

std::string sweep_row(const WolbachiaParams& p) {
    const FixedPointSet set = fixed_points(p);
    const double comm = max_abs(commutator(build_structure_matrices(p)));
    const bool dibaric = dibaric_solve(p).has_value();

    std::string roots;
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        if (i) roots += ';';
        roots += fmt17(set.points[i].state.x2);
    }

    std::string row = fmt17(p.w);
    row += ',';
    row += fmt17(p.d);
    row += ',';
    row += std::to_string(set.points.size());
    row += ',';
    row += roots;
    row += ',';
    row += fmt17(set.discriminant);
    row += ',';
    row += fmt17(comm);
    row += ',';
    row += dibaric ? "true" : "false";
    return row;
}

}  // namespace

void run_sweep(const SweepConfig& cfg, std::ostream& os) {
    if (cfg.w_cells < 2 || cfg.d_cells < 2) {
        throw std::invalid_argument("sweep: grid must be at least 2x2");
    }
    const int n = cfg.w_cells * cfg.d_cells;
    std::vector<std::string> rows(n);

    unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n));

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int cell = next.fetch_add(1); cell < n; cell = next.fetch_add(1)) {
            const int i = cell / cfg.d_cells + 1;  // row-major in (w,d)
            const int j = cell % cfg.d_cells + 1;
            const auto p = WolbachiaParams::checked(static_cast<double>(i) / cfg.w_cells,
                                                    static_cast<double>(j) / cfg.d_cells);
            rows[cell] = sweep_row(p);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    os << "w,d,n_fixed_points,x2_roots,discriminant,commutator_norm,dibaric\n";
    for (const auto& row : rows) os << row << '\n';
}

}  // namespace wolb
