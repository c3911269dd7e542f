"""
Command-line interface for superoptimal continued fractions
Headless front end: expansions, verification reports, measures and sampled
statistics, written to stdout as JSON lines, CSV or plain tables
"""
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .config.settings import Settings
from .core.analytics import (borel_window_check, enclosure_strings, entropy_of, ergodic_stats,
                             legendre_exactness, verify_superoptimal)
from .core.contraction import format_fraction, iter_socf, socf_digits_oracle
from .core.errors import BadParameter, NeverHitsWithinCap, PropertyViolation, SocfError
from .core.expr import parse_rational, parse_surd
from .core.region_dsl import parse_region
from .core.regions import hurwitz_cell, jump_cell, measure, measure_bounds
from .core.tail_source import tail_source_from_spec
from .utils.file_handler import FileHandler
from .utils.logger import setup_logger

FORMATS = ('jsonl', 'csv', 'pretty')


@dataclass
class CommandConfig:
    """Everything a run depends on; no other state is consulted"""

    command: str
    input_kind: Optional[str] = None
    input_value: Optional[str] = None
    guard: int = 0
    region: Optional[str] = None
    K: int = 10
    N: int = 10
    cap: Optional[int] = None
    check: Optional[str] = None
    epsilon: Optional[str] = None
    C: Optional[float] = None
    seed: int = 0
    samples: int = 50
    orbit_len: int = 10_000
    workers: Optional[int] = None
    oracle: bool = False
    bounds_depth: Optional[int] = None
    output_format: str = 'jsonl'


class CLIProcessor:
    """Command-line processor dispatching one subcommand"""

    def __init__(self, config: CommandConfig, stream=None):
        """
        Initialize CLI processor

        Args:
            config (CommandConfig): Parsed command line
            stream: Output stream (default: stdout)
        """
        self.config = config
        self.stream = stream or sys.stdout
        self.logger = setup_logger()
        if config.output_format not in FORMATS:
            raise BadParameter(f"unknown output format {config.output_format!r}")

    def run(self) -> int:
        """
        Execute the configured command

        Returns:
            int: process exit code
        """
        handlers = {
            'expand': self.cmd_expand,
            'socf': self.cmd_socf,
            'verify': self.cmd_verify,
            'stats': self.cmd_stats,
            'measure': self.cmd_measure,
        }
        try:
            handler = handlers[self.config.command]
        except KeyError:
            self.logger.error(f"unknown command {self.config.command!r}")
            return 2
        try:
            return handler()
        except KeyboardInterrupt:
            self.logger.warning("Interrupted by user")
            return 1
        except SocfError as e:
            self.logger.debug(f"{type(e).__name__} in {self.config.command}", exc_info=True)
            print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
            return e.exit_code

    # -- inputs -----------------------------------------------------------

    def _source(self):
        if not self.config.input_kind:
            raise BadParameter("an input is required (--surd, --decimal, --decimal-file, --fixture or --digits)")
        return tail_source_from_spec(self.config.input_kind, self.config.input_value, self.config.guard)

    def _region(self):
        if not self.config.region:
            raise BadParameter("--region is required")
        return parse_region(self.config.region)

    def _emit(self, records: List[Dict], pretty_lines: List[str] = None, csv_rows: List[Dict] = None):
        fmt = self.config.output_format
        if fmt == 'jsonl':
            FileHandler.write_jsonl(records, self.stream)
        elif fmt == 'csv':
            FileHandler.write_csv(csv_rows if csv_rows is not None else records, self.stream)
        else:
            for line in pretty_lines if pretty_lines is not None else [str(r) for r in records]:
                self.stream.write(line + '\n')
            self.stream.flush()

    # -- commands ---------------------------------------------------------

    def cmd_expand(self) -> int:
        """RCF digits a_1..a_N with convergents p_n/q_n"""
        src = self._source()
        N = self.config.N
        if N < 1:
            raise BadParameter(f"-n must be >= 1, got {N}")
        records = []
        for n in range(1, N + 1):
            a = src.digit(n)
            records.append({'n': n, 'digit': a, 'convergent': str(src.convergent(n))})
        self.logger.info(f"expanded {src.label} to depth {N}")
        pretty = [
            'digits:      ' + ' '.join(str(r['digit']) for r in records),
            'convergents: ' + ' '.join(r['convergent'] for r in records),
        ]
        self._emit(records, pretty)
        return 0

    def _cell_label(self, region, step) -> Optional[str]:
        if region.family == 'jump':
            return jump_cell(step.word, region.parameter).label
        if region.family == 'hurwitz':
            name, a = hurwitz_cell(step.z_start)
            return f"{name}({a})"
        return None

    def cmd_socf(self) -> int:
        """
        The SOCF expansion for k = 0..K, one record per induced step

        JSON lines are streamed, so a run stopped by the search cap still
        shows the records reached before it.
        """
        region = self._region()
        src = self._source()
        K = self.config.K
        if K < 1:
            raise BadParameter(f"-k must be >= 1, got {K}")
        streaming = self.config.output_format == 'jsonl'
        rows = []
        try:
            for record in iter_socf(region, src, self.config.cap, with_theta=True):
                row = {
                    'k': record.k,
                    'cell': self._cell_label(region, record.step),
                    'j': record.j,
                    'n': record.n,
                    'alpha': format_fraction(record.alpha),
                    'beta': format_fraction(record.beta),
                    'term': record.term,
                    'P': str(record.convergent.P),
                    'Q': str(record.convergent.Q),
                    'convergent': str(record.convergent),
                    'theta': enclosure_strings(record.theta),
                }
                rows.append(row)
                if streaming:
                    FileHandler.write_jsonl([row], self.stream)
                if record.k >= K:
                    break
        except NeverHitsWithinCap as e:
            self.logger.error(f"orbit of {src.label} never enters {region.label} within the search cap")
            print(f"error: orbit never enters {region.label}: {e}", file=sys.stderr)
            return e.exit_code

        if self.config.oracle:
            oracle = socf_digits_oracle(src, [r['n'] for r in rows], K)
            expected = [(format_fraction(d.alpha), format_fraction(d.beta)) for d in oracle.digits]
            produced = [(r['alpha'], r['beta']) for r in rows[1:]]
            if expected != produced or (format_fraction(oracle.beta0), format_fraction(oracle.alpha0)) != \
                    (rows[0]['beta'], rows[0]['alpha']):
                mismatch = next((i + 1 for i, (a, b) in enumerate(zip(expected, produced)) if a != b), 0)
                raise PropertyViolation(f"dynamical and block-continuant digits differ at k = {mismatch}",
                                        witness={'k': mismatch})
            self.logger.info(f"oracle agrees on {K} digits")

        if not streaming:
            terms = [r['term'] for r in rows[1:]]
            pretty = [
                f"{region.label} expansion of {src.label}",
                f"[{rows[0]['beta']}; " + ', '.join(terms) + ']',
                'convergents: ' + ', '.join(r['convergent'] for r in rows),
            ]
            if rows[0]['cell'] is not None:
                pretty.append('cells:       ' + ', '.join(r['cell'] for r in rows))
            self._emit(rows, pretty)
        return 0

    def cmd_verify(self) -> int:
        """superoptimal, legendre or borel check; 6 on a violation"""
        check = self.config.check
        if check == 'superoptimal':
            return self._verify_superoptimal()
        if check == 'legendre':
            return self._verify_legendre()
        if check == 'borel':
            return self._verify_borel()
        raise BadParameter(f"unknown check {check!r}")

    def _verify_superoptimal(self) -> int:
        region = self._region()
        src = self._source()
        if self.config.epsilon is None:
            if region.family not in ('jump', 'legendre', 'hurwitz'):
                raise BadParameter("--eps is required for custom regions")
            epsilon = Fraction(1, region.parameter) if region.family == 'jump' else region.parameter
        else:
            epsilon = parse_surd(self.config.epsilon)
        C = self.config.C
        if C is None:
            mu = measure(region).value
            C = 1 / mu if mu > 0 else float('inf')
        report = verify_superoptimal(src, region, epsilon, C, self.config.K, self.config.cap)
        data = report.to_dict()
        pretty = [
            f"{data['verdict']}: Θ(x, P_k/Q_k) <= {data['epsilon']} for k <= {data['k_reached']}"
            if report.passed else f"{data['verdict']}: {data['stopped_by'] or 'violations'}",
            f"max Θ in {data['theta_max']}",
            data['clause_ii'],
        ]
        pretty.extend(f"violation k={v['k']}: {v['P']}/{v['Q']} Θ in {v['theta']}" for v in data['violations'])
        self._emit([data], pretty, report.csv_rows())
        if report.stopped_by is not None:
            return report.stop_exit_code
        if report.violations:
            return PropertyViolation.exit_code
        if report.clause_i is None:
            return 3
        return 0

    def _verify_legendre(self) -> int:
        src = self._source()
        if self.config.epsilon is None:
            raise BadParameter("--eps is required for the legendre check")
        result = legendre_exactness(src, parse_rational(self.config.epsilon), self.config.K, self.config.cap)
        data = result.to_dict()
        pretty = [
            f"{data['verdict']}: legendre({data['epsilon0']}) convergents = Θ-filtered RCF convergents",
            'socf:     ' + ', '.join(result.socf_convergents),
            'filtered: ' + ', '.join(result.filtered_convergents),
        ]
        if not result.holds:
            pretty.append(f"missing {result.missing}, extra {result.extra}")
        self._emit([data], pretty)
        return 0 if result.holds else PropertyViolation.exit_code

    def _verify_borel(self) -> int:
        src = self._source()
        result = borel_window_check(src, self.config.N)
        data = result.to_dict()
        pretty = [
            f"{data['verdict']}: every window of three consecutive Θ_n has one below 1/sqrt(5) for n <= {result.N}",
            f"closest window starts at n = {result.worst_index}, min Θ in {result.worst_window_min}",
        ]
        if result.failures:
            pretty.append(f"failing windows: {result.failures}")
        self._emit([data], pretty)
        return 0 if result.holds else PropertyViolation.exit_code

    def _progress_callback(self, stats):
        """
        Callback for progress updates

        Args:
            stats (dict): Current statistics
        """
        if stats['processed'] % 10 == 0 or stats['processed'] == stats['total']:
            self.logger.debug(f"samples {stats['processed']}/{stats['total']} | "
                              f"redrawn {stats['redrawn']} | ETA {stats['eta']}")

    def cmd_stats(self) -> int:
        """Seeded hit frequency, Lévy slope and entropy"""
        region = self._region()
        workers = self.config.workers
        if workers is not None and workers > Settings.MAX_WORKERS_LIMIT:
            self.logger.warning(f"Workers capped at {Settings.MAX_WORKERS_LIMIT}")
            workers = Settings.MAX_WORKERS_LIMIT
        stats = ergodic_stats(region, self.config.samples, self.config.orbit_len, self.config.seed,
                              workers, self._progress_callback)
        data = stats.to_dict()
        pretty = [f"{key}: {value}" for key, value in data.items()]
        self._emit([data], pretty)
        return 0

    def cmd_measure(self) -> int:
        """Normalised Gauss measure of the region, its entropy and optional dyadic bounds"""
        region = self._region()
        estimate = measure(region)
        data = {'region': region.label, **estimate.to_dict()}
        data['entropy'] = entropy_of(region) if estimate.value > 0 else None
        if self.config.bounds_depth is not None:
            bounds = measure_bounds(region, self.config.bounds_depth)
            data['bounds'] = {'lower': bounds.lower, 'upper': bounds.upper, 'boxes': bounds.boxes}
        pretty = [f"{key}: {value}" for key, value in data.items()]
        self._emit([data], pretty)
        return 0


def main(config: CommandConfig) -> int:
    """
    Main entry point for CLI

    Args:
        config (CommandConfig): Parsed command line

    Returns:
        int: exit code
    """
    # Validate settings
    errors = Settings.validate()
    if errors:
        print("Configuration errors:", file=sys.stderr)
        for error in errors:
            print(f"  - {error}", file=sys.stderr)
        return 1

    try:
        processor = CLIProcessor(config)
    except SocfError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    return processor.run()
