import pytest
from _pytest.pytester import Pytester

from cuspidal_shadow.gbasis import GlobalBasis
from cuspidal_shadow.liecore import CartanDatum, beta_sequence
from cuspidal_shadow.shuffle import ShuffleAlgebra

pytest_plugins = ["pytester"]

PYTESTER_TIMEOUT = 60


@pytest.fixture(autouse=True)
def wide_terminal(monkeypatch):
    """Make all pytester tests use wider terminal for better output visibility."""
    monkeypatch.setenv("COLUMNS", "120")


@pytest.fixture(scope="session")
def a1():
    return CartanDatum.of_type("A", 1)


@pytest.fixture(scope="session")
def a2():
    return CartanDatum.of_type("A", 2)


@pytest.fixture(scope="session")
def a3():
    return CartanDatum.of_type("A", 3)


@pytest.fixture(scope="session")
def d4():
    return CartanDatum.of_type("D", 4)


@pytest.fixture(scope="session")
def a2_algebra(a2):
    return ShuffleAlgebra(a2)


@pytest.fixture(scope="session")
def a2_engine(a2):
    """Global basis engine for A2 with w0 = s1 s2 s1."""
    return GlobalBasis.for_word(a2, beta_sequence(a2, (1, 2, 1)))


@pytest.fixture
def run_with_timeout():
    """Fixture that provides a helper to run pytester with timeout

    Returns:
        A callable that runs pytester.runpytest_subprocess with timeout handling
    """

    def _run(pytester, *args, timeout=PYTESTER_TIMEOUT, **kwargs):
        """Run pytester with timeout and proper error handling.

        Args:
            pytester: The pytester fixture
            *args: Arguments to pass to runpytest_subprocess
            timeout: Timeout in seconds (default: PYTESTER_TIMEOUT)
            **kwargs: Keyword arguments to pass to runpytest_subprocess

        Returns:
            The result object from runpytest_subprocess

        Raises:
            pytest.fail: If the subprocess times out
        """
        try:
            return pytester.runpytest_subprocess(*args, timeout=timeout, **kwargs)
        except Pytester.TimeoutExpired as e:
            stdout_path = pytester.path.joinpath("stdout")
            stderr_path = pytester.path.joinpath("stderr")

            stdout = stdout_path.read_text() if stdout_path.exists() else "<no stdout>"
            stderr = stderr_path.read_text() if stderr_path.exists() else "<no stderr>"

            def truncate_output(text: str) -> str:
                lines = text.splitlines()
                if len(lines) > 200:
                    return f"{chr(10).join(lines[:100])}\n\n... ({len(lines) - 200} lines omitted) ...\n\n{chr(10).join(lines[-100:])}"
                return text

            pytest.fail(
                f"Test timed out after {timeout} seconds\n"
                f"Error: {e}\n"
                f"STDOUT:\n{truncate_output(stdout)}\n"
                f"STDERR:\n{truncate_output(stderr)}"
            )

    return _run
