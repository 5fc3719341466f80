#include <iostream>

#include "CLI11.hpp"
#include "pathsum/jobs.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Matrix functions of block-partitioned matrices via path sums"};
    pathsum::JobSpec job;

    app.add_option("function", job.function,
                   "One of: inverse, exp, log, power, resolvent, cost, graph")
        ->required();
    app.add_option("--matrix", job.matrix_path, "Matrix file (header 'matrix R C exact|float')")
        ->required();
    app.add_option("--partition", job.partition_spec,
                   "Partition: trivial | singletons | tensor:d1xd2...:s | {1,3,4},{2} | file")
        ->required();
    app.add_option("--out", job.out_path, "Output file")->required();
    app.add_option("--t", job.t, "Time parameter for exp, e.g. 1 or 0.5+2i");
    app.add_option("--q", job.q, "Exponent for power; integers stay exact in exact mode");
    app.add_option("--s", job.s, "Evaluation point for resolvent");
    app.add_option("--mode", job.mode, "Force exact or float arithmetic (default: file mode)");
    app.add_option("--quad", job.quad_order, "Logarithm quadrature order (default 32)");
    app.add_option("--tol", job.lift_tol,
                   "Float-to-rational lifting tolerance for float-mode exp/power (default 1e-12)");
    app.add_option("--alpha", job.alpha, "Cost job source vertex, 1-based");
    app.add_option("--omega", job.omega, "Cost job target vertex, 1-based (default: --alpha)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    return pathsum::run_job(job, std::cerr);
}
