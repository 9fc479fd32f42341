from pcbz import _kernels


def pytest_sessionstart(session):
    # compile the hot kernels once so per-test timings are steady-state
    _kernels.warm_up()
