import itertools
import logging
import math
import sys
from argparse import Namespace
from typing import Iterator, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from padic_solve.cli.output import write_grid, write_records
from padic_solve.core.config import settings
from padic_solve.core.errors import (
    DomainError,
    ResourceLimitError,
    UnsupportedCaseError,
    VerificationMismatchError,
)
from padic_solve.models.problem import CaseTag, ProblemInstance
from padic_solve.models.records import Method, OutputRecord
from padic_solve.services.counting import count_solutions, enumerate_solutions, is_wieferich_base
from padic_solve.services.modmath import require_odd_prime
from padic_solve.services.oracle import brute_force

logger = logging.getLogger(__name__)

PARAMETERS = ("g", "n", "k", "p", "e")
UNSUPPORTED = -1


def _values(args: Namespace, name: str, default: Optional[Sequence[int]] = None) -> List[int]:
    values = getattr(args, name, None)
    if values is None:
        if default is None:
            raise DomainError(f"--{name} is required")
        return list(default)
    return list(values)


def _single(args: Namespace, name: str, default: Optional[int] = None) -> int:
    values = _values(args, name, None if default is None else [default])
    if len(values) != 1:
        raise DomainError(f"--{name} takes a single value here, got {len(values)}")
    return values[0]


def _product(args: Namespace) -> Iterator[Tuple[int, int, int, int, int]]:
    axes = [_values(args, name) for name in PARAMETERS]
    size = math.prod(len(axis) for axis in axes)
    if size > settings.max_instances:
        raise ResourceLimitError(f"{size} instances requested, the limit is {settings.max_instances}")
    return itertools.product(*axes)


def _single_instance(args: Namespace) -> ProblemInstance:
    return ProblemInstance(**{name: _single(args, name) for name in PARAMETERS})


def _base_record(inst: ProblemInstance, method: Method, **fields) -> OutputRecord:
    return OutputRecord(g=inst.g, n=inst.n, k=inst.k, p=inst.p, e=inst.e, m=inst.m, method=method, **fields)


def _wieferich_flag(inst: ProblemInstance) -> Optional[bool]:
    if inst.case_tag == CaseTag.K_EQUALS_P_N1:
        return is_wieferich_base(inst.g, inst.p)
    return None


def cmd_count(args: Namespace, out: TextIO = sys.stdout) -> int:
    records = []
    disagreements = 0
    for g, n, k, p, e in _product(args):
        try:
            inst = ProblemInstance(g=g, n=n, k=k, p=p, e=e)
        except DomainError as exc:
            records.append(OutputRecord(g=g, n=n, k=k, p=p, e=e, method=Method.FORMULA, unsupported_reason=str(exc)))
            continue
        if not inst.supported:
            records.append(_base_record(inst, Method.FORMULA, unsupported_reason=inst.unsupported_reason))
            continue

        report = count_solutions(inst)
        agreement = None
        if args.check:
            scan = brute_force(inst, ceiling=args.ceiling)
            agreement = scan.count == report.total
            if not agreement:
                disagreements += 1
                logger.error(f"{inst.label()}: formula gives {report.total}, oracle finds {scan.count}")
        records.append(_base_record(inst, Method.FORMULA, count=report.total, wieferich=report.wieferich, agreement=agreement))

    write_records(records, args.format, out)
    return VerificationMismatchError.exit_code if disagreements else 0


def cmd_enumerate(args: Namespace, out: TextIO = sys.stdout) -> int:
    inst = _single_instance(args)
    inst.require_supported()
    found = enumerate_solutions(inst)

    agreement = None
    if args.check:
        scan = brute_force(inst, ceiling=args.ceiling)
        agreement = scan.solutions == found.solutions and len(found) == count_solutions(inst).total
        if not agreement:
            logger.error(f"{inst.label()}: enumeration ({len(found)}) and oracle ({scan.count}) disagree")

    record = _base_record(
        inst,
        Method.LIFT,
        count=len(found),
        solutions=found.solutions,
        wieferich=_wieferich_flag(inst),
        agreement=agreement,
    )
    write_records([record], args.format, out)
    return VerificationMismatchError.exit_code if agreement is False else 0


def cmd_oracle(args: Namespace, out: TextIO = sys.stdout) -> int:
    inst = _single_instance(args)
    if not inst.supported and not args.exploratory:
        raise UnsupportedCaseError(f"{inst.unsupported_reason}; pass --exploratory to scan it anyway")
    scan = brute_force(inst, ceiling=args.ceiling)

    agreement = None
    if args.check:
        if inst.supported:
            agreement = enumerate_solutions(inst).solutions == scan.solutions
            if not agreement:
                logger.error(f"{inst.label()}: oracle and enumeration disagree")
        else:
            logger.warning(f"{inst.label()}: --check has nothing to compare against in an unsupported case")

    record = _base_record(
        inst,
        Method.ORACLE,
        count=scan.count,
        solutions=scan.solutions,
        wieferich=_wieferich_flag(inst),
        agreement=agreement,
        exploratory=True if scan.exploratory else None,
        unsupported_reason=inst.unsupported_reason,
    )
    write_records([record], args.format, out)
    return VerificationMismatchError.exit_code if agreement is False else 0


def cmd_wieferich(args: Namespace, out: TextIO = sys.stdout, err: Optional[TextIO] = None) -> int:
    p = _single(args, "p")
    require_odd_prime(p)
    records = []
    for g in _values(args, "g", range(1, p)):
        if g % p == 0:
            records.append(OutputRecord(g=g, p=p, method=Method.FORMULA, unsupported_reason=f"p = {p} divides g = {g}"))
            continue
        records.append(OutputRecord(g=g, p=p, method=Method.FORMULA, wieferich=is_wieferich_base(g, p)))

    write_records(records, args.format, out)
    bases = [r.g for r in records if r.wieferich]
    summary = f"{len(bases)} Wieferich bases modulo {p} among {len(records)} values of g: {bases}"
    logger.info(summary)
    (out if args.format == "text" else err or sys.stderr).write(summary + "\n")
    return 0


def _fill(instances: np.ndarray, evaluate) -> np.ndarray:
    grid = np.full(instances.shape, UNSUPPORTED, dtype=np.int64)
    for index, inst in np.ndenumerate(instances):
        if inst.supported:
            grid[index] = evaluate(inst)
    return grid


def _verify(instances: np.ndarray, formula: np.ndarray, ceiling: int, describe) -> np.ndarray:
    """Enumeration and (under the ceiling) oracle counts, checked cell by cell against the formula."""
    enumerated = _fill(instances, lambda inst: len(enumerate_solutions(inst)))
    scanned = np.array(formula, copy=True)
    for index, inst in np.ndenumerate(instances):
        if not inst.supported:
            continue
        if inst.window > ceiling:
            logger.warning(f"{describe(index)}: window {inst.window} over the ceiling, oracle skipped")
            continue
        scanned[index] = brute_force(inst, ceiling=ceiling).count

    mismatches = np.argwhere((enumerated != formula) | (scanned != formula))
    if len(mismatches):
        index = tuple(int(i) for i in mismatches[0])
        cell = {
            "cell": describe(index),
            "formula": int(formula[index]),
            "enumeration": int(enumerated[index]),
            "oracle": int(scanned[index]),
        }
        raise VerificationMismatchError(
            f"{describe(index)}: formula {cell['formula']}, enumeration {cell['enumeration']}, oracle {cell['oracle']}",
            cell,
        )
    return enumerated


def _table_layout(args: Namespace):
    """(rows g, column name, column values, instance builder, title)."""
    if args.table == 1:
        p = _single(args, "p", 7)
        e, n = _single(args, "e", 1), _single(args, "n", 1)
        gs, ks = _values(args, "g", range(1, p)), _values(args, "k", range(1, 5))
        title = f"solutions of g^(x^{n}) = x^k (mod {p}^{e}) for 0 <= x < m*{p}^{e}"
        return gs, "k", ks, (lambda g, k: ProblemInstance(g=g, n=n, k=k, p=p, e=e)), title

    fixed = [f"--{name}" for name in ("n", "k", "e") if getattr(args, name, None) is not None]
    if fixed:
        raise DomainError(f"table 2 fixes n = 1, k = p and takes e from --e-max; drop {', '.join(fixed)}")
    p = _single(args, "p", 11)
    e_max = args.e_max if args.e_max is not None else 4
    gs = _values(args, "g", range(1, p))
    title = f"solutions of g^x = x^{p} (mod {p}^e) for 0 <= x < m*{p}^e"
    return gs, "e", list(range(1, e_max + 1)), (lambda g, e: ProblemInstance(g=g, n=1, k=p, p=p, e=e)), title


def cmd_table(args: Namespace, out: TextIO = sys.stdout) -> int:
    if args.table not in (1, 2):
        raise DomainError(f"unknown table {args.table}; choose 1 or 2")
    gs, col_name, cols, build, title = _table_layout(args)

    instances = np.empty((len(gs), len(cols)), dtype=object)
    for i, g in enumerate(gs):
        for j, c in enumerate(cols):
            instances[i, j] = build(g, c)

    def describe(index) -> str:
        i, j = index
        return f"table {args.table} cell g={gs[i]} {col_name}={cols[j]}"

    formula = _fill(instances, lambda inst: count_solutions(inst).total)
    if args.verify:
        ceiling = settings.ceiling if args.ceiling is None else args.ceiling
        _verify(instances, formula, ceiling, describe)
        logger.info(f"table {args.table}: {int((formula >= 0).sum())} cells verified")

    if args.format != "json":
        write_grid(formula, "g", gs, col_name, cols, args.format, out, title=title)
        return 0

    records = []
    for index, inst in np.ndenumerate(instances):
        if not inst.supported:
            records.append(_base_record(inst, Method.FORMULA, unsupported_reason=inst.unsupported_reason))
            continue
        records.append(
            _base_record(
                inst,
                Method.FORMULA,
                count=int(formula[index]),
                wieferich=_wieferich_flag(inst),
                agreement=True if args.verify else None,
            )
        )
    write_records(records, "json", out)
    return 0
