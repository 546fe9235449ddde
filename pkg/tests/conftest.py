def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        name, ok, detail = results[key]
        terminalreporter.write_line(f"criterion {key} {'PASS' if ok else 'FAIL'}: {name}: {detail}")
