def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT

    if REPORT:
        terminalreporter.section("acceptance")
        for line in sorted(REPORT):
            terminalreporter.write_line(line)
