#!/usr/bin/env python3
"""Solve an MPS model with HiGHS and write a `name value` solution file.

usage: highs_solve.py MODEL.mps SOLUTION.txt GAP TIMEOUT_SECONDS

The solution file starts with `# status <s>` and `# objective <v>` header
lines, followed by one `name value` line per column. Values are written
with full double precision.
"""
import sys


def main(argv):
    if len(argv) != 5:
        sys.stderr.write(__doc__)
        return 2
    mps, out, gap, timeout = argv[1], argv[2], float(argv[3]), float(argv[4])
    try:
        import highspy
    except ImportError:
        sys.stderr.write("highspy is not installed (pip install highspy)\n")
        return 3

    h = highspy.Highs()
    h.setOptionValue("output_flag", True)
    h.setOptionValue("log_to_console", True)
    h.setOptionValue("threads", 1)
    h.setOptionValue("mip_rel_gap", gap)
    h.setOptionValue("time_limit", timeout)
    h.setOptionValue("random_seed", 0)
    h.setOptionValue("mip_heuristic_run_rins", False)
    h.setOptionValue("mip_heuristic_run_rens", False)
    if h.readModel(mps) == highspy.HighsStatus.kError:
        sys.stderr.write("cannot read %s\n" % mps)
        return 4
    h.run()

    ms = h.getModelStatus()
    S = highspy.HighsModelStatus
    info = h.getInfo()
    has_primal = info.primal_solution_status == 2  # kSolutionStatusFeasible
    if ms == S.kOptimal:
        status = "optimal"
    elif ms in (S.kInfeasible, S.kUnboundedOrInfeasible):
        status = "infeasible"
    elif ms in (S.kTimeLimit, S.kIterationLimit, S.kSolutionLimit, S.kInterrupt) and has_primal:
        status = "feasible-gap"
    else:
        status = "error"

    lines = ["# status %s" % status, "# message %s" % h.modelStatusToString(ms)]
    if status in ("optimal", "feasible-gap"):
        lines.append("# objective %r" % info.objective_function_value)
        values = h.getSolution().col_value
        lp = h.getLp()
        for name, value in zip(lp.col_names_, values):
            lines.append("%s %r" % (name, float(value)))
    with open(out, "w") as f:
        f.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
