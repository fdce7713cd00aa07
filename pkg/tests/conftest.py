import pytest

from mcmine.model import Misconception, Problem, SolutionSet

FACTORIAL_PROBLEM = (
    "Write the factorial(n) function that computes the factorial n! defined as: "
    "0! = 1 and n! = n x (n - 1)!. If the input n is negative, the function "
    "should return 0."
)

FACTORIAL_SOLUTION = """\
def factorial(n):
    if n < 0:
        return 0
    fact = 1
    for i in range(1, n + 1):
        fact = fact * i
    return fact
"""

FACTORIAL_STUDENT_CODE = """\
def factorial(n):
    if n < 0:
        return 0
    fact = 1
    for i in range(n):
        fact = fact * i
    return fact
"""

RANGE_MISCONCEPTION = "Student believes that `range(n)` produces values from 1 to `n` inclusive."


@pytest.fixture
def range_mc() -> Misconception:
    return Misconception(
        id="mc-range",
        description=RANGE_MISCONCEPTION,
        example_code="for i in range(5):\n    total = total + i",
        category="harmful",
        origin="documented",
        source="unit-fixtures",
    )


@pytest.fixture
def mc_bank(range_mc) -> dict[str, Misconception]:
    others = [
        Misconception(
            id="mc-print-return",
            description="Student believes that a print statement must be used to return a value from a function.",
            example_code="def add(a, b):\n    print(a + b)",
            category="harmful",
            origin="documented",
            source="unit-fixtures",
        ),
        Misconception(
            id="mc-return-parens",
            description="Student believes that the `return` statement requires parentheses around its argument.",
            example_code="def add(a, b):\n    return(a + b)",
            category="benign",
            origin="documented",
            source="unit-fixtures",
        ),
        Misconception(
            id="mc-vowel-names",
            description="Student believes that variable names containing vowels can only store string values.",
            example_code="cnt = 0\nnm = 'x'",
            category="benign",
            origin="artificial",
            source="unit-fixtures",
        ),
    ]
    bank = {"mc-range": range_mc}
    bank.update({mc.id: mc for mc in others})
    return bank


@pytest.fixture
def factorial_problem() -> Problem:
    return Problem(
        id="p-factorial",
        description=FACTORIAL_PROBLEM,
        tests=("assert factorial(0) == 1", "assert factorial(4) == 24", "assert factorial(-1) == 0"),
        source="unit-fixtures",
    )


@pytest.fixture
def problem_bank(factorial_problem):
    """Ten problems, two of which carry a second solution."""
    problems = {factorial_problem.id: factorial_problem}
    solutions = {
        factorial_problem.id: SolutionSet(
            problem_id=factorial_problem.id,
            solutions=(FACTORIAL_SOLUTION,),
        )
    }
    specs = [
        ("p-sum", "Write sum_list(xs) that returns the sum of a list of numbers.",
         ["def sum_list(xs):\n    total = 0\n    for x in xs:\n        total = total + x\n    return total\n",
          "def sum_list(xs):\n    return sum(xs)\n"]),
        ("p-max", "Write max_of(a, b) that returns the larger of two numbers.",
         ["def max_of(a, b):\n    if a > b:\n        return a\n    return b\n"]),
        ("p-rev", "Write reverse_string(s) that returns the reversed string.",
         ["def reverse_string(s):\n    return s[::-1]\n"]),
        ("p-even", "Write is_even(n) that returns True when n is even.",
         ["def is_even(n):\n    return n % 2 == 0\n"]),
        ("p-count", "Write count_vowels(s) that counts vowels in a string.",
         ["def count_vowels(s):\n    count = 0\n    for ch in s:\n        if ch in 'aeiou':\n            count = count + 1\n    return count\n"]),
        ("p-fib", "Write fib(n) that returns the n-th Fibonacci number, fib(0) = 0.",
         ["def fib(n):\n    a, b = 0, 1\n    for _ in range(n):\n        a, b = b, a + b\n    return a\n"]),
        ("p-clamp", "Write clamp(x, lo, hi) that limits x to the range [lo, hi].",
         ["def clamp(x, lo, hi):\n    if x < lo:\n        return lo\n    if x > hi:\n        return hi\n    return x\n",
          "def clamp(x, lo, hi):\n    return max(lo, min(x, hi))\n"]),
        ("p-pal", "Write is_palindrome(s) that returns True when s reads the same backwards.",
         ["def is_palindrome(s):\n    return s == s[::-1]\n"]),
        ("p-tetra", "Write tetrahedral_number(n) that computes the n-th tetrahedral number.",
         ["def tetrahedral_number(n):\n    return (n * (n + 1) * (n + 2)) // 6\n"]),
    ]
    for pid, description, sols in specs:
        problems[pid] = Problem(
            id=pid,
            description=description,
            tests=(f"assert {pid.replace('-', '_')} is not None",),
            source="unit-fixtures",
        )
        solutions[pid] = SolutionSet(problem_id=pid, solutions=tuple(sols))
    return problems, solutions
