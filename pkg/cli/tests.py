"""
Tests for the `threefold` management command.

Tests cover:
- Subcommand results on the good-line example and catalog cubics
- JSON and text output, determinism across --threads
- Structured errors and exit codes
"""
import json
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from .reporting import RunReport
from .services import execute, run_command

EXAMPLE = ("x3^2*x0 + x3*x4*x1 + x4^2*x2 + x3*(x0^2+x1^2) + x4*(x1^2+x2^2)"
           " + x0*x2^2 + x2*x0^2")
LINE = "0,0,0,1,0;0,0,0,0,1"


def run(*args):
    out = StringIO()
    call_command("threefold", *args, stdout=out)
    return json.loads(out.getvalue())


def run_error(*args):
    out = StringIO()
    with_error = None
    try:
        call_command("threefold", *args, stdout=out)
    except CommandError as exc:
        with_error = exc
    return with_error, json.loads(out.getvalue())


# =============================================================================
# SUBCOMMANDS
# =============================================================================

class SubcommandTests(SimpleTestCase):
    def test_smooth(self):
        report = run("smooth", "--field", "GF(2)", "--cubic", EXAMPLE)
        self.assertEqual(report["results"], {"smooth": True})
        self.assertEqual(report["field"], "GF(2)")

    def test_hermitian(self):
        self.assertEqual(run("hermitian", "--cubic", "fermat")["results"], {"hermitian": True})
        self.assertEqual(run("hermitian", "--cubic", EXAMPLE)["results"], {"hermitian": False})

    def test_classify_line(self):
        report = run("classify-line", "--cubic", EXAMPLE, "--line", LINE)
        self.assertEqual(report["results"], {"class": "Good"})

    def test_classify_double_line_witness(self):
        report = run("classify-line", "--cubic", "double-line-witness")
        self.assertEqual(report["results"], {"class": "NotGood", "reason": "DoubleLineFiber"})

    def test_lines(self):
        report = run("lines", "--cubic", EXAMPLE)
        self.assertEqual(report["results"]["count"], len(report["results"]["lines"]))

    def test_discriminant(self):
        results = run("discriminant")["results"]
        self.assertEqual(results["degree"], 5)
        self.assertTrue(results["smooth"])
        self.assertTrue(results["etale"])

    def test_cover_count(self):
        results = run("cover-count", "--m-max", "2")["results"]
        self.assertEqual(results["q"], 2)
        self.assertEqual(results["counts"][0], {"m": 1, "N": 4, "Ntilde": 6})

    def test_zeta(self):
        results = run("zeta")["results"]
        self.assertEqual(len(results["L_C"]), 13)
        self.assertEqual(results["g"], 6)
        self.assertIn("p_rank", results)

    def test_verify_identity(self):
        results = run("verify-identity", "--m-max", "2")["results"]
        self.assertTrue(results["pass"])
        self.assertEqual(results["identity"][0]["lhs"], 19)

    def test_cartier(self):
        results = run("cartier")["results"]
        self.assertEqual(len(results["matrix"]), 6)
        self.assertEqual(results["p_rank"], run("zeta")["results"]["p_rank"])

    def test_quadric_parity(self):
        results = run("quadric-parity", "--n", "2")["results"]
        self.assertEqual(results["class_sizes"], [3, 3])
        self.assertTrue(results["pass"])

    def test_explicit_quadric(self):
        results = run("quadric-parity", "--quadric", "0,1,0,0,0,0,0,0,1,0")["results"]
        self.assertEqual(results["generators"], 6)


# =============================================================================
# OUTPUT AND DETERMINISM
# =============================================================================

class OutputTests(SimpleTestCase):
    def test_text_output(self):
        out = StringIO()
        call_command("threefold", "smooth", "--text", stdout=out)
        self.assertIn("smooth: true", out.getvalue())

    def test_threads_do_not_change_results(self):
        one = execute("cover-count", {"m_max": 4, "threads": 1})
        four = execute("cover-count", {"m_max": 4, "threads": 4})
        self.assertEqual(one.results_json(), four.results_json())

    def test_run_command(self):
        report = run_command(["hermitian", "--cubic", "klein"])
        self.assertIsInstance(report, RunReport)
        self.assertEqual(report.results, {"hermitian": True})
        self.assertEqual(report.inputs["cubic"], "klein")

    def test_sorted_keys(self):
        text = run_command(["smooth"]).to_json()
        data = json.loads(text)
        self.assertEqual(list(data), sorted(data))


# =============================================================================
# ERRORS
# =============================================================================

class ErrorTests(SimpleTestCase):
    def test_bad_field_is_input_error(self):
        exc, payload = run_error("smooth", "--field", "GF(6)")
        self.assertEqual(exc.returncode, 3)
        self.assertEqual(payload["error"]["code"], "field_construction")

    def test_line_not_on_cubic(self):
        exc, payload = run_error("classify-line", "--line", "1,0,0,0,0;0,0,0,1,0")
        self.assertEqual(exc.returncode, 3)
        self.assertIn("message", payload["error"])

    def test_missing_line_is_usage_error(self):
        exc, payload = run_error("classify-line", "--cubic", "fermat")
        self.assertEqual(exc.returncode, 2)
        self.assertEqual(payload["error"]["code"], "usage_error")

    def test_budget_flag(self):
        exc, payload = run_error("cover-count", "--m-max", "6", "--budget", "16")
        self.assertEqual(exc.returncode, 4)
        self.assertEqual(payload["error"]["code"], "enumeration_budget_exceeded")

    def test_budget_on_unbudgeted_command(self):
        exc, payload = run_error("hermitian", "--budget", "5")
        self.assertEqual(exc.returncode, 2)
        self.assertEqual(payload["error"]["code"], "usage_error")
        self.assertEqual(payload["error"]["details"]["command"], "hermitian")

    def test_non_positive_budget(self):
        exc, payload = run_error("cover-count", "--budget", "0")
        self.assertEqual(exc.returncode, 2)
        self.assertEqual(payload["error"]["details"], {"budget": 0})

    def test_explicit_zero_m_max_is_rejected(self):
        for flag in ("--m-max", "--identity-m-max"):
            exc, payload = run_error("verify-identity", flag, "0")
            self.assertEqual(exc.returncode, 2)
            self.assertEqual(payload["error"]["code"], "usage_error")
        exc, _ = run_error("cover-count", "--m-max", "-1")
        self.assertEqual(exc.returncode, 2)

    def test_parse_error_reports_position(self):
        exc, payload = run_error("smooth", "--cubic", "x0^3 + * x1^3")
        self.assertEqual(exc.returncode, 3)
        self.assertIn("position", payload["error"]["details"])
