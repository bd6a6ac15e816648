'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.
'''
import argparse
import logging
import sys
from typing import List, Optional, Union

from picardmult import __version__
from picardmult.config import Config, RunConfig
from picardmult.defines import COMMANDS, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, NORMALIZATIONS
from picardmult.exceptions import InvalidConfig, NotUnitModulus, WordSyntaxError
from picardmult.log import get_logger
from picardmult.suites import DOMAIN_FAILURES, Report, parse_element, run_suite


LOG = logging.getLogger('picardmult')


def setup_logging(config: Config):
    if not config.log.disabled:
        get_logger('picardmult', config.log.filename, config.log.level)
    if config.log_msg:
        LOG.info(config.log_msg)


def run(command: str, config: Union[RunConfig, Config, dict, str, None] = None) -> Report:
    """
    Execute one command (or 'all') and return its report. When the run config names
    an output path the report is written there as JSON.
    """
    if command not in COMMANDS:
        raise InvalidConfig(f"unknown command {command!r}, expected one of {', '.join(COMMANDS)}")
    if not isinstance(config, RunConfig):
        config = RunConfig.from_config(Config(config))
    for element in (config.g, config.h):
        if element is not None:
            parse_element(element)

    report = run_suite(command, config)
    LOG.info("CLI: %s %s", command, 'passed' if report.passed else 'FAILED')
    if config.output:
        with open(config.output, 'w') as fp:
            fp.write(report.dumps())
    return report


def parser() -> argparse.ArgumentParser:
    ret = argparse.ArgumentParser(prog='picardmult', description='Verification suites for fractional weight multiplier systems on Picard modular groups.')
    ret.add_argument('command', choices=COMMANDS)
    ret.add_argument('--config', help='YAML config file; defaults to $PICARDMULT_CONFIG or the built-in defaults')
    ret.add_argument('--seed', type=int)
    ret.add_argument('--samples', type=int, help='sample count for every sampled check of the command')
    ret.add_argument('--max-len', type=int, dest='max_len')
    ret.add_argument('--ideal', help="generator a + b zeta of I, as 'a,b'")
    ret.add_argument('--tau', help="base point as 're,im;re,im'")
    ret.add_argument('--tol-sigma', type=float, dest='tol_sigma_round')
    ret.add_argument('--out', dest='output')
    ret.add_argument('--g', help="word or torus element 't:zeta', 't:<re>,<im>'")
    ret.add_argument('--h', help="word or torus element 't:zeta', 't:<re>,<im>'")
    ret.add_argument('--normalization', choices=NORMALIZATIONS)
    ret.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    return ret


def main(argv: Optional[List[str]] = None) -> int:
    args = parser().parse_args(argv)
    try:
        config = Config(args.config)
        setup_logging(config)
        run_config = RunConfig.from_config(
            config,
            seed=args.seed,
            samples=args.samples,
            max_len=args.max_len,
            ideal=args.ideal,
            base_point=args.tau,
            tol_sigma_round=args.tol_sigma_round,
            output=args.output,
            g=args.g,
            h=args.h,
            normalization=args.normalization,
        )
        report = run(args.command, run_config)
    except (InvalidConfig, WordSyntaxError, NotUnitModulus) as e:
        print(f"picardmult: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DOMAIN_FAILURES as e:
        print(f"picardmult: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL

    print(report.dumps())
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
