from django.core.management.base import BaseCommand, CommandError

from cli.reporting import error_payload
from cli.services import SUBCOMMANDS, execute, format_report
from conicbundle.exceptions import ConicBundleError


class Command(BaseCommand):
    help = "Cubic threefolds over finite fields: lines, conic bundles, zeta functions and Pryms."

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="subcommand", required=True)
        for name in SUBCOMMANDS:
            sub = subparsers.add_parser(name)
            sub.add_argument("--field", default="GF(2)", help='e.g. "GF(2)", "GF(2^2)", "GF(4; mod=1,1,1)"')
            sub.add_argument("--cubic", default="good-line-example",
                             help="catalog name or form text in x0..x4")
            sub.add_argument("--line", help='two spanning vectors, e.g. "0,0,0,1,0;0,0,0,0,1"')
            sub.add_argument("--m-max", dest="m_max", type=int)
            sub.add_argument("--identity-m-max", dest="identity_m_max", type=int)
            sub.add_argument("--threads", type=int)
            sub.add_argument("--budget", type=int)
            sub.add_argument("--chart", help='coordinates playing x, y, z, e.g. "1,0,2"')
            sub.add_argument("--quadric", help="upper-triangular coefficients, comma separated")
            sub.add_argument("--n", type=int)
            sub.add_argument("--kind", choices=["hyperbolic", "elliptic"], default="hyperbolic")
            output = sub.add_mutually_exclusive_group()
            output.add_argument("--json", dest="text", action="store_false")
            output.add_argument("--text", dest="text", action="store_true")
            sub.set_defaults(text=False)

    def handle(self, *args, **options):
        command = options.pop("subcommand")
        try:
            report = execute(command, options)
        except ConicBundleError as exc:
            self.stdout.write(error_payload(exc))
            raise CommandError(exc.message, returncode=exc.exit_code)
        self.stdout.write(format_report(report, options.get("text")))
