"""Solve an LP-format 0/1 model with HiGHS and write a neutral solution file.

Usage: python3 highs_solve.py MODEL.lp SOLUTION.sol [TIME_LIMIT_SECONDS]

The solution file starts with a ``status:`` line, optionally followed by
``objective:`` and ``bound:`` lines, then one ``name value`` line per
variable.
"""

import sys

import highspy


def main(argv):
    if len(argv) < 3:
        print(__doc__, file=sys.stderr)
        return 1
    lp_path, sol_path = argv[1], argv[2]
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if len(argv) > 3:
        h.setOptionValue("time_limit", float(argv[3]))
    if h.readModel(lp_path) != highspy.HighsStatus.kOk:
        print(f"cannot read {lp_path}", file=sys.stderr)
        return 1
    h.run()
    status = h.getModelStatus()
    info = h.getInfo()
    ms = highspy.HighsModelStatus
    has_point = info.primal_solution_status == 2
    if status == ms.kOptimal:
        word = "optimal"
    elif status == ms.kInfeasible:
        word = "infeasible"
    elif status in (ms.kTimeLimit, ms.kInterrupt):
        word = "time_limit"
    elif has_point:
        word = "feasible"
    else:
        print(f"unexpected HiGHS status {h.modelStatusToString(status)}", file=sys.stderr)
        return 1

    with open(sol_path, "w") as out:
        out.write(f"status: {word}\n")
        if word == "infeasible":
            return 0
        bound = info.mip_dual_bound
        if bound is not None and abs(bound) < 1e30:
            out.write(f"bound: {bound}\n")
        if has_point:
            out.write(f"objective: {info.objective_function_value}\n")
            values = h.getSolution().col_value
            lp = h.getLp()
            for name, value in zip(lp.col_names_, values):
                out.write(f"{name} {value}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
