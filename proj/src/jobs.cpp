#include "pathsum/jobs.hpp"

#include <fstream>
#include <ostream>
#include <utility>
#include <vector>

#include "pathsum/errors.hpp"
#include "pathsum/functions.hpp"
#include "pathsum/io.hpp"
#include "pathsum/structured.hpp"

namespace pathsum {

namespace {

bool is_numerical_failure(const Error& e) {
    return dynamic_cast<const Singular*>(&e) || dynamic_cast<const SingularOverField*>(&e) ||
           dynamic_cast<const SingularDressing*>(&e) || dynamic_cast<const SingularChain*>(&e) ||
           dynamic_cast<const NonConvergence*>(&e) || dynamic_cast<const NotStrictlyProper*>(&e) ||
           dynamic_cast<const NilpotentUnsupported*>(&e);
}

int write_file(const std::string& path, const std::string& content, std::ostream& diag) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        diag << "error: cannot write output file: " << path << "\n";
        return 1;
    }
    return 0;
}

/// Undirected support of the link structure, for the cost model.
template <class S>
std::vector<std::pair<int, int>> link_edges(const PartitionGraph<S>& g) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (g.has_link(u, v) || g.has_link(v, u)) edges.push_back({u, v});
    return edges;
}

int execute(const JobSpec& job, std::ostream& diag) {
    if (job.out_path.empty()) {
        diag << "error: --out is required\n";
        return 1;
    }
    if (job.quad_order < 1) {
        diag << "error: --quad must be a positive order\n";
        return 1;
    }
    if (job.lift_tol <= 0.0) {
        diag << "error: --tol must be positive\n";
        return 1;
    }

    ParsedMatrix pm = parse_matrix(job.matrix_path);
    bool exact_mode;
    if (job.mode.empty()) {
        exact_mode = pm.exact;
    } else if (job.mode == "exact") {
        if (!pm.exact) {
            diag << "error: --mode exact needs an exact matrix file; " << job.matrix_path
                 << " is float\n";
            return 1;
        }
        exact_mode = true;
    } else if (job.mode == "float") {
        exact_mode = false;
    } else {
        diag << "error: --mode must be 'exact' or 'float'\n";
        return 1;
    }
    const Eigen::Index D = pm.rows();
    const std::vector<std::vector<int>> groups = parse_partition(job.partition_spec, D);

    if (job.function == "inverse") {
        const std::string out = exact_mode ? serialize_matrix(ps_inverse(pm.xmat, groups))
                                           : serialize_matrix(ps_inverse(pm.fmat, groups));
        return write_file(job.out_path, out, diag);
    }

    if (job.function == "exp") {
        if (job.t.empty()) {
            diag << "error: exp requires --t\n";
            return 1;
        }
        const std::complex<double> t = parse_float_scalar(job.t);
        const MatF r = exact_mode ? ps_exp(pm.xmat, groups, t)
                                  : ps_exp(rationalize(pm.fmat, job.lift_tol), groups, t);
        return write_file(job.out_path, serialize_matrix(r), diag);
    }

    if (job.function == "log") {
        const MatF r = exact_mode ? ps_log(pm.xmat, groups, job.quad_order)
                                  : ps_log(pm.fmat, groups, job.quad_order);
        return write_file(job.out_path, serialize_matrix(r), diag);
    }

    if (job.function == "power") {
        if (job.q.empty()) {
            diag << "error: power requires --q\n";
            return 1;
        }
        const GaussianRational qx = parse_exact_scalar(job.q);
        const bool integer_q =
            qx.is_real() && qx.real().get_den() == 1 && qx.real().get_num().fits_slong_p();
        if (exact_mode && integer_q) {
            const MatX r = ps_power(pm.xmat, groups, qx.real().get_num().get_si());
            return write_file(job.out_path, serialize_matrix(r), diag);
        }
        const MatX base = exact_mode ? pm.xmat : rationalize(pm.fmat, job.lift_tol);
        const MatF r = ps_power(base, groups, qx.to_complex());
        return write_file(job.out_path, serialize_matrix(r), diag);
    }

    if (job.function == "resolvent") {
        if (job.s.empty()) {
            diag << "error: resolvent requires --s\n";
            return 1;
        }
        if (exact_mode) {
            const GaussianRational s = parse_exact_scalar(job.s);
            return write_file(job.out_path, serialize_matrix(ps_resolvent(pm.xmat, groups, s)),
                              diag);
        }
        const std::complex<double> s = parse_float_scalar(job.s);
        return write_file(job.out_path, serialize_matrix(ps_resolvent(pm.fmat, groups, s)), diag);
    }

    if (job.function == "cost") {
        if (job.alpha < 1) {
            diag << "error: cost requires --alpha (1-based vertex)\n";
            return 1;
        }
        const int omega = job.omega < 1 ? job.alpha : job.omega;
        std::vector<std::pair<int, int>> edges;
        int n;
        if (exact_mode) {
            auto g = partition_graph(general_partition(pm.xmat, groups), GraphVariant::OfM);
            n = g.size();
            edges = link_edges(g);
        } else {
            auto g = partition_graph(general_partition(pm.fmat, groups), GraphVariant::OfM);
            n = g.size();
            edges = link_edges(g);
        }
        const CostReport rep = tree_cost(n, edges, job.alpha - 1, omega - 1);
        const std::string out = "inv=" + std::to_string(rep.inversions) +
                                " mul=" + std::to_string(rep.multiplications) +
                                " add=" + std::to_string(rep.additions) + "\n";
        return write_file(job.out_path, out, diag);
    }

    if (job.function == "graph") {
        const std::string out =
            exact_mode
                ? serialize_graph(partition_graph(general_partition(pm.xmat, groups), GraphVariant::OfM))
                : serialize_graph(partition_graph(general_partition(pm.fmat, groups), GraphVariant::OfM));
        return write_file(job.out_path, out, diag);
    }

    diag << "error: unknown function '" << job.function
         << "' (expected inverse, exp, log, power, resolvent, cost, or graph)\n";
    return 1;
}

}  // namespace

int run_job(const JobSpec& job, std::ostream& diag) {
    try {
        return execute(job, diag);
    } catch (const Error& e) {
        if (is_numerical_failure(e)) {
            diag << "numerical failure: " << e.what() << "\n";
            return 2;
        }
        diag << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pathsum
