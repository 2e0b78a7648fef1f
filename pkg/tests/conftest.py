import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", parent=settings.get_profile("default"), derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

# Profiles that stay smooth, finite and away from their singularities on
# y in [-3, 3].  Every catalogue function appears at least once.
CATALOGUE = (
    "0", "1", "y", "2*y^2 - 1", "y^3/4", "cosh(y)", "sinh(y)", "tanh(y)",
    "sin(y)", "cos(y)", "tan(y/3)", "exp(y/2)", "ln(y + 4)", "sqrt(y + 4)",
    "abs(y - 4)", "y*sinh(y)", "e^(y/3)", "pi*cos(y/2)", "1/(2 + sin(y))",
    "(y + 5)^0.5", "2^y", "-cosh(y/2) + 3",
)

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
