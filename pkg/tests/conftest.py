from _acceptance_log import RESULTS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num, desc, ok, detail in sorted(RESULTS):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {num:2d}  {status}  {desc}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
