"""Command line interface: build, stats, query, bounds and codes subcommands.

Results are written to standard output, logs to standard error. Exit codes are 0 on success,
2 if a graph is not in the table, 3 for unreadable input and 4 if a resource limit is hit.
"""
import argparse
import json
import logging as lo
import os
import sys
from . import bounds as bds
from . import codes as cds
from . import graphs as grs
from . import queries as qrs
from . import tablebase as tbs

__all__ = [
    'CliConfig', 'run', 'main', 'EXIT_OK', 'EXIT_NOT_FOUND', 'EXIT_PARSE_ERROR',
    'EXIT_RESOURCE_LIMIT',
]

logger = lo.getLogger('pyfgs')

EXIT_OK = 0
EXIT_NOT_FOUND = 2
EXIT_PARSE_ERROR = 3
EXIT_RESOURCE_LIMIT = 4

THREADS_VARIABLE = 'PYFGS_THREADS'


class CliConfig:
    """Validated command line settings."""

    def __init__(self, command, table=None, graph=None, output_format='json', threads=1,
                 max_qubits=None, max_graphs=None, out=None, connected_only=False,
                 deep_check=False, verify=False, ns=False, climb=None, subgraph_lb=False,
                 max_nodes=None, budget=None, limit=None, delta=None, plot=None, verbosity=0):
        """Class constructor.

        Args:
            command: Subcommand ('build', 'stats', 'query', 'bounds', 'codes search' or
                'codes eval').
            table: Table file to read.
            graph: Graph file (graph6 or JSON), '-' for standard input.
            output_format: 'json' or 'text'.
            threads: Number of worker processes.
            max_qubits: Largest initial qubit count of a build.
            max_graphs: Abort a build once it stores more graphs.
            out: Table file to write.
            connected_only: Restrict statistics to connected orbits.
            deep_check: Replay all fusion links when loading.
            verify: Replay query protocols on stabilizer tableaux.
            ns: Compute the minimum emitter count.
            climb: Emitter count for the climb bound.
            subgraph_lb: Compute the induced subgraph lower bound.
            max_nodes: Largest progenitor size of a code search.
            budget: Largest fusion count of a code search.
            limit: Number of codes to report.
            delta: Encoding vertex of a code evaluation.
            plot: Image file for the loss curves of a code evaluation.
            verbosity: -1 for warnings only, 0 for progress messages, 1 for debug messages.
        """

        self.command = command
        self.table = table
        self.graph = graph
        self.output_format = output_format
        self.threads = threads
        self.max_qubits = max_qubits
        self.max_graphs = max_graphs
        self.out = out
        self.connected_only = connected_only
        self.deep_check = deep_check
        self.verify = verify
        self.ns = ns
        self.climb = climb
        self.subgraph_lb = subgraph_lb
        self.max_nodes = max_nodes
        self.budget = budget
        self.limit = limit
        self.delta = delta
        self.plot = plot
        self.verbosity = verbosity
        self._check()

    def _check(self):
        if self.output_format not in ('json', 'text'):
            raise ValueError('Unknown output format {}.'.format(self.output_format))
        if self.threads < 1:
            raise ValueError('Thread count must be positive, got {}.'.format(self.threads))
        if self.command == 'build' and not 1 <= self.max_qubits <= grs.MAX_VERTICES:
            raise ValueError('--max-qubits must lie in 1..{}.'.format(grs.MAX_VERTICES))
        if self.command == 'bounds' and self.subgraph_lb and not self.table:
            raise ValueError('--subgraph-lb needs --table.')
        if self.command == 'bounds' and not (self.ns or self.climb is not None or
                                             self.subgraph_lb):
            self.ns = True

    @classmethod
    def from_args(cls, args, environ=None):
        """Creates the configuration from parsed arguments; the thread count falls back to the
        PYFGS_THREADS environment variable."""
        environ = os.environ if environ is None else environ
        command = args.command if args.command != 'codes' else 'codes ' + args.codes_command
        threads = args.threads if getattr(args, 'threads', None) else \
            int(environ.get(THREADS_VARIABLE, 1))
        options = {key: value for key, value in vars(args).items()
                   if key not in ('command', 'codes_command', 'threads', 'verbose', 'quiet')}
        return cls(command, threads=threads, verbosity=args.verbose - args.quiet, **options)


def _parser():
    parser = argparse.ArgumentParser(prog='pyfgs', description=__doc__.splitlines()[0])
    parser.add_argument('-v', '--verbose', action='count', default=0)
    parser.add_argument('-q', '--quiet', action='count', default=0)
    commands = parser.add_subparsers(dest='command', required=True)

    build = commands.add_parser('build', help='build a table')
    build.add_argument('--max-qubits', type=int, required=True)
    build.add_argument('--out', required=True)
    build.add_argument('--threads', type=int)
    build.add_argument('--max-graphs', type=int)
    build.add_argument('--connected-only-stats', dest='connected_only', action='store_true')

    stats = commands.add_parser('stats', help='print table statistics')
    stats.add_argument('--table', required=True)
    stats.add_argument('--connected-only', action='store_true')
    stats.add_argument('--deep-check', action='store_true')

    query = commands.add_parser('query', help='construct a graph state from the table')
    query.add_argument('--table', required=True)
    query.add_argument('--graph', required=True)
    query.add_argument('--format', dest='output_format', choices=('json', 'text'),
                       default='json')
    query.add_argument('--verify', action='store_true')

    bounds = commands.add_parser('bounds', help='emitter and fusion bounds of a graph')
    bounds.add_argument('--graph', required=True)
    bounds.add_argument('--table')
    bounds.add_argument('--ns', action='store_true')
    bounds.add_argument('--climb', type=int)
    bounds.add_argument('--subgraph-lb', action='store_true')

    codes = commands.add_parser('codes', help='loss-tolerant graph codes')
    code_commands = codes.add_subparsers(dest='codes_command', required=True)
    search = code_commands.add_parser('search', help='rank the codes of table graphs')
    search.add_argument('--table', required=True)
    search.add_argument('--max-nodes', type=int, required=True)
    search.add_argument('--budget', type=int, required=True)
    search.add_argument('--limit', type=int, default=10)
    evaluate = code_commands.add_parser('eval', help='loss curves of one progenitor graph')
    evaluate.add_argument('--graph', required=True)
    evaluate.add_argument('--delta', type=int, required=True)
    evaluate.add_argument('--plot')
    for sub in (search, evaluate):
        sub.add_argument('--format', dest='output_format', choices=('json', 'text'),
                         default='json')
    return parser


def _read_graph(name):
    if name == '-':
        return grs.read_graph(sys.stdin.buffer.read())
    with open(name, 'rb') as file:
        return grs.read_graph(file.read())


def _emit(document, config, text=None):
    if config.output_format == 'text' and text is not None:
        sys.stdout.write(text + '\n')
    else:
        sys.stdout.write(json.dumps(document, sort_keys=True, indent=2) + '\n')


def _build(config):
    try:
        table = tbs.build(config.max_qubits, processes=config.threads,
                          max_graphs=config.max_graphs)
    except tbs.ResourceLimitError as error:
        if error.tablebase is not None:
            tbs.save(error.tablebase, config.out + '.partial')
            logger.warning('Partial table written to {}.partial.'.format(config.out))
        raise
    tbs.save(table, config.out)
    _emit(tbs.stats(table, config.connected_only).to_dict(), config)
    return EXIT_OK


def _stats(config):
    table = tbs.load(config.table, deep_check=config.deep_check)
    _emit(tbs.stats(table, config.connected_only).to_dict(), config)
    return EXIT_OK


def _query(config):
    table = tbs.load(config.table)
    target = _read_graph(config.graph)
    found = qrs.lookup(table, target)
    if found is None:
        _emit({'found': False, 'graph': target.graph6(),
               'subgraph_lower_bound': bds.subgraph_lower_bound(table, target)}, config)
        return EXIT_NOT_FOUND
    protocol = qrs.construct(table, target)
    document = json.loads(qrs.export_protocol(protocol).decode('utf-8'))
    document.update({'found': True, 'orbit': found[0], 'graph': target.graph6()})
    if config.verify:
        outcome = qrs.replay_verify(protocol, target)
        document['verified'] = bool(outcome)
        if not outcome:
            document['verification_error'] = {'step': outcome.step, 'message': outcome.message}
    text = 'initial {}: {} (depth {})'.format(protocol.initial.graph6(), protocol,
                                             protocol.depth)
    _emit(document, config, text)
    return EXIT_OK


def _bounds(config):
    graph = _read_graph(config.graph)
    document = {'graph': graph.graph6()}
    if config.ns:
        document['ns_min'] = bds.ns_min(graph).to_dict()
    if config.climb is not None:
        document['climb'] = dict(bds.climb(graph, config.climb).to_dict(), n_s=config.climb)
    if config.subgraph_lb:
        table = tbs.load(config.table)
        document['subgraph_lower_bound'] = bds.subgraph_lower_bound(table, graph)
    _emit(document, config)
    return EXIT_OK


def _codes_search(config):
    table = tbs.load(config.table)
    ranked = cds.search_codes(table, config.max_nodes, config.budget, config.limit)
    document = [dict(code.to_dict(), threshold=round(threshold, 4))
                for code, threshold in ranked]
    text = '\n'.join('{:.4f} {} delta={}'.format(threshold, code.progenitor.graph6(), code.delta)
                     for code, threshold in ranked)
    _emit(document, config, text)
    return EXIT_OK


def _codes_eval(config):
    progenitor = _read_graph(config.graph)
    code, threshold = cds.best_code(progenitor, config.delta)
    curves = cds.loss_curves(code)
    document = dict(code.to_dict(), threshold=round(threshold, 4), curves={
        name: {'coefficients': curve.coefficients.tolist(),
               'threshold': round(curve.threshold(), 4)} for name, curve in curves.items()})
    if config.plot:
        from . import gfx
        gfx.plot_loss_curves(curves, title=progenitor.graph6(), file_name=config.plot,
                             halt=False)
    _emit(document, config, '{:.4f}'.format(threshold))
    return EXIT_OK


_COMMANDS = {
    'build': _build,
    'stats': _stats,
    'query': _query,
    'bounds': _bounds,
    'codes search': _codes_search,
    'codes eval': _codes_eval,
}


def run(argv):
    """Runs the command line interface.

    Args:
        argv: Arguments without the program name.

    Returns:
        Exit code.
    """

    args = _parser().parse_args(argv)
    try:
        config = CliConfig.from_args(args)
    except ValueError as error:
        sys.stderr.write('pyfgs: {}\n'.format(error))
        return EXIT_PARSE_ERROR
    level = {-1: lo.WARNING, 0: lo.INFO, 1: lo.DEBUG}[max(-1, min(1, config.verbosity))]
    lo.basicConfig(stream=sys.stderr, level=level, format='%(asctime)s %(levelname)s %(message)s')
    try:
        return _COMMANDS[config.command](config)
    except (grs.GraphFormatError, tbs.TablebaseFormatError, OSError) as error:
        logger.error(str(error))
        return EXIT_PARSE_ERROR
    except tbs.ResourceLimitError as error:
        logger.error(str(error))
        return EXIT_RESOURCE_LIMIT
    except ValueError as error:
        logger.error(str(error))
        return EXIT_PARSE_ERROR


def main():
    sys.exit(run(sys.argv[1:]))
