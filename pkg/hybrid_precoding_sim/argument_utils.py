"""Defines util functions used to retrieve the parameters of the command
   line.

Functions:
    build_parser() -> ArgumentParser:
        Parser of the run, sweep, probe-complexity and validate verbs.
    parse_arguments(argv=None) -> tuple[Namespace, dict[str, str]]:
        Parse the command line and its trailing key=value overrides.
    get_pair_argument(arg: str) -> tuple[str, str] | tuple[None, None]:
        Split a command line argument assuming it is a key value pair
        (key=value).
    get_n_tx_values(text: str) -> list[int]:
        Antenna counts of a comma separated list.
"""

from argparse import ArgumentParser, ArgumentTypeError, Namespace

from hybrid_precoding_sim import __version__


def get_n_tx_values(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(',') if v.strip()]
    except ValueError as error:
        raise ArgumentTypeError(f'expected comma separated integers, got {text!r}') from error


def build_parser() -> ArgumentParser:
    """Parser of the command line verbs and their flags.

    Returns:
        ArgumentParser: The parser. Trailing key=value pairs are left to
                        parse_arguments.
    """

    common = ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, help='master seed, overrides run.seed')
    common.add_argument('--out', help='results file (default results.<format>)')
    common.add_argument('--format', choices=('csv', 'json'), default='csv',
                        help='results format')
    common.add_argument('--workers', type=int, default=1,
                        help='worker processes running the trials')
    common.add_argument('--debug-dump', metavar='DIR',
                        help='write per-trial matrices and solver traces to DIR')
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for solver iterations')

    parser = ArgumentParser(
        prog='hybrid-precoding-sim',
        description='Hybrid precoding Monte-Carlo simulator. Trailing '
                    'key=value arguments override configuration keys.'
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    verbs = parser.add_subparsers(dest='command', required=True)

    run = verbs.add_parser('run', parents=[common], help='run the trials of a configuration')
    run.add_argument('config', help='configuration file')

    sweep = verbs.add_parser('sweep', parents=[common],
                             help='run a named sweep or a default experiment family')
    sweep.add_argument('config', help='configuration file')
    sweep.add_argument('name', help='sweep name declared in the configuration, '
                                    'or an experiment family')

    timing = verbs.add_parser('probe-complexity', parents=[common],
                              help='time one trial against the number of transmit antennas')
    timing.add_argument('--config', help='configuration file (defaults if omitted)')
    timing.add_argument('--n-tx', type=get_n_tx_values, default=[16, 32, 64],
                        help='comma separated antenna counts')
    timing.add_argument('--repeats', type=int, default=1, help='trials timed per count')

    validate = verbs.add_parser('validate', parents=[common],
                                help='parse a configuration and report its content')
    validate.add_argument('config', help='configuration file')
    return parser


def get_pair_argument(arg: str) -> tuple[str, str] | tuple[None, None]:
    """Split a command line argument assuming it is a key value pair
       (key=value).

    Args:
        arg (str): The command line argument.

    Returns:
        tuple[str, str]: key, value if found, (None, None) otherwise.
    """

    key, separator, value = arg.partition('=')
    if not separator or not key:
        return None, None
    return key, value


def parse_arguments(argv: list[str] | None = None) -> tuple[Namespace, dict[str, str]]:
    """Parse the command line.

    Args:
        argv (list[str], optional): Arguments, sys.argv[1:] when omitted.

    Returns:
        tuple[Namespace, dict[str, str]]: The parsed flags and the
            configuration overrides. Exits with status 2 on unknown
            arguments.
    """

    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    overrides = {}
    for arg in extra:
        key, value = get_pair_argument(arg)
        if key is None:
            parser.error(f'unrecognized argument {arg!r}')
        overrides[key] = value
    return args, overrides
