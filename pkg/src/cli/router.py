from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Tuple, Union
import json
import logging

from pydantic import BaseModel

from ..curve.models import Curve
from ..curve.service import CurveService
from ..exceptions import UnsupportedInputError
from ..funcfield.service import FunctionFieldService
from ..localdim.schemas import LocalDimOut, LocalResponse, ReductionInfoOut
from ..localdim.service import LocalDimensionService
from ..modl.schemas import ModLClassOut, TorsionResponse
from ..modl.service import ModLService
from ..report.schemas import GlobalReportOut
from ..report.service import ReportService
from .parser import DocumentParser, parse_kernel, parse_place
from .schemas import InvariantsResponse, PlacesResponse

logger = logging.getLogger(__name__)

# handlers return (JSON payload, text rendering)
Handler = Callable[..., Tuple[Union[BaseModel, Dict], str]]


@dataclass
class Command:
    name: str
    handler: Handler
    help: str
    arguments: List[Tuple[Tuple[str, ...], Dict]] = field(default_factory=list)


class CommandRouter:
    """Registry of subcommands; main.py turns it into an argparse parser."""

    def __init__(self):
        self.commands: Dict[str, Command] = {}

    def command(self, name: str, help: str, arguments=()):
        def register(func: Handler) -> Handler:
            self.commands[name] = Command(name, func, help, list(arguments))
            return func

        return register


router = CommandRouter()

CURVE_FILE = (("file",), {"help": "curve document (p = ...; a = [a1, a2, a3, a4, a6])"})
L_OPTION = (("--l",), {"type": int, "required": True, "help": "prime l different from p"})


def load_curve(path: str) -> Curve:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UnsupportedInputError(f"cannot read curve file {path}: {exc.strerror}", path=path)
    return DocumentParser(text).parse_curve()[1]


@router.command("invariants", "print b2..b8, c4, c6, the discriminant and j", [CURVE_FILE])
def invariants(args) -> Tuple[BaseModel, str]:
    c = load_curve(args.file)
    inv = CurveService.invariants(c)
    out = InvariantsResponse(
        equation=str(c),
        b2=str(inv.b2),
        b4=str(inv.b4),
        b6=str(inv.b6),
        b8=str(inv.b8),
        c4=FunctionFieldService.format_factored(inv.c4),
        c6=FunctionFieldService.format_factored(inv.c6),
        discriminant=FunctionFieldService.format_factored(inv.disc),
        j_invariant=FunctionFieldService.format_factored(inv.j),
    )
    text = "\n".join([
        f"curve: {out.equation}",
        f"c4 = {out.c4}",
        f"c6 = {out.c6}",
        f"Δ = {out.discriminant}",
        f"j = {out.j_invariant}",
    ])
    return out, text


@router.command("places", "list the bad places with their reduction types", [CURVE_FILE])
def places(args) -> Tuple[BaseModel, str]:
    c = load_curve(args.file)
    infos = [LocalDimensionService.classify_reduction(c, v) for v in CurveService.bad_places(c)]
    out = PlacesResponse(places=[ReductionInfoOut.from_info(info) for info in infos])
    text = "\n".join(
        f"{info.place.label:<16}{info.rtype.value:<26}v(Δ) = {info.model.vdisc}" for info in infos
    ) or "no bad places"
    return out, text


@router.command(
    "local",
    "reduction type and dim V(E_v)/l at one place",
    [CURVE_FILE, (("--place",), {"required": True, "help": "monic irreducible polynomial in t, or inf"}), L_OPTION],
)
def local(args) -> Tuple[BaseModel, str]:
    c = load_curve(args.file)
    place = parse_place(c.field, args.place)
    info = LocalDimensionService.classify_reduction(c, place)
    result = LocalDimensionService.local_dim(c, place, args.l, info)
    out = LocalResponse(reduction=ReductionInfoOut.from_info(info), local=LocalDimOut.from_local(result))
    dim = "undetermined" if result.dim is None else str(result.dim)
    lines = [
        f"place: {place.label} (residue field of order {place.residue_order})",
        f"reduction: {info.rtype.value}, v(Δ_min) = {info.model.vdisc}",
        f"dim V(E_v)/{args.l} = {dim} ({result.reason})",
    ]
    if result.advisory:
        lines.append(f"advisory: {result.advisory}")
    return out, "\n".join(lines)


@router.command("torsion", "rational l-torsion rank and points", [CURVE_FILE, L_OPTION])
def torsion(args) -> Tuple[BaseModel, str]:
    c = load_curve(args.file)
    result = ModLService.rational_l_torsion(c, args.l)
    out = TorsionResponse.from_torsion(args.l, result)
    lines = [f"dim E(F)[{args.l}] = {result.rank}"]
    lines += [f"  ({p.x}, {p.y})" for p in out.points]
    return out, "\n".join(lines)


@router.command(
    "classify",
    "mod-l image case, coinvariant dimension and surjectivity flag",
    [
        CURVE_FILE,
        L_OPTION,
        (("--kernel",), {"action": "append", "default": [], "help": "candidate kernel polynomial in x (repeatable)"}),
    ],
)
def classify(args) -> Tuple[BaseModel, str]:
    c = load_curve(args.file)
    candidates = [parse_kernel(c.field, k) for k in args.kernel]
    modl = ModLService.classify(c, args.l, candidates)
    out = ModLClassOut.from_class(modl, ModLService.surjectivity_flag(modl))
    lines = [
        f"case: {out.case} ({out.reason})",
        f"torsion rank: {out.torsion_rank}, chi trivial: {out.chi_trivial}",
        f"coinvariant dim: {'undetermined' if out.coinv_dim is None else out.coinv_dim}",
        f"surjective: {out.surjective}",
        f"rational isogenies ({'complete' if out.search_complete else 'incomplete'} search):",
    ]
    lines += [f"  kernel {iso.kernel_poly} [{iso.origin}] -> {iso.codomain}" for iso in out.rational_isogenies]
    lines += [f"note: {note}" for note in out.notes]
    return out, "\n".join(lines)


@router.command(
    "report",
    "global report: local dimensions, coinvariants, kernel and cokernel of the boundary map",
    [CURVE_FILE, L_OPTION, (("--strict",), {"action": "store_true", "help": "fail unless ker and coker are point values"})],
)
def report(args) -> Tuple[BaseModel, str]:
    c = load_curve(args.file)
    result = ReportService.build_report(c, args.l)
    if args.strict:
        ReportService.require_point_values(result)
    return GlobalReportOut.from_report(result), ReportService.render_text(result)


@router.command("sanity", "check rational l-torsion ranks against the non-isotrivial torsion list", [CURVE_FILE])
def sanity(args) -> Tuple[Dict, str]:
    c = load_curve(args.file)
    ls = ReportService.default_sanity_primes(c)
    warnings = ReportService.torsion_sanity(c, ls=ls)
    payload = {"primes": ls, "warnings": warnings}
    text = "\n".join(f"warning: {w}" for w in warnings) or f"torsion ranks consistent for l in {ls}"
    return payload, text


@router.command("schema", "print the JSON schema of the report document", [(("--out",), {"help": "write to FILE"})])
def schema(args) -> Tuple[Dict, str]:
    document = json.dumps(GlobalReportOut.model_json_schema(), indent=2)
    if args.out:
        Path(args.out).write_text(document + "\n", encoding="utf-8")
        logger.info(f"Wrote report schema to {args.out}")
    return GlobalReportOut.model_json_schema(), document
