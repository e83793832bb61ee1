from hypothesis import settings

# first calls into numba kernels include JIT compilation
settings.register_profile("chromsieve", deadline=None)
settings.load_profile("chromsieve")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n} {'PASS' if ok else 'FAIL'}  {detail}")
