def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Re-emit the acceptance pass/fail lines outside of output capture."""
    try:
        from test_acceptance import REPORT_LINES
    except ImportError:
        return
    if REPORT_LINES:
        terminalreporter.write_line("")
        for line in REPORT_LINES:
            terminalreporter.write_line(line)
