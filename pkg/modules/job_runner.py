"""
Job Runner Module
Coordinates input parsing, computation and report templates for every
CLI command
"""

import logging
from pathlib import Path
from typing import Dict, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

from templates import render_json, render_text
from templates.series_template import PsiTemplate, SeriesTemplate
from templates.tate_template import TateTemplate
from templates.torus_template import TorusTemplate
from templates.verify_template import VerifyTemplate

from .config import DEFAULT_SETTINGS, Settings
from .errors import ParseError, WildCurve
from .galois_lattice import h1, invariants_rank, phi_torus
from .input_parser import read_key_values, parse_curve_file, parse_data_file, parse_lattice_file
from .local_field import with_precision_retry
from .ratfun import psi
from .series_core import ReductionData, WildEllipticData, assemble, assemble_wild_elliptic
from .tate import WeierstrassModel, derived_quantities, reduction_tower, tate_algorithm, wild_elliptic_tower
from .verifier import verify_curve, verify_data

logger = logging.getLogger(__name__)

_DATA_KEYS = {"p", "e", "e_prime", "tower", "regime", "potential_good"}

WILD_HINT = "the curve is wild; rerun with --wild or describe it with a wild data file (keys p, e_prime, tower)"


class JobSpec(BaseModel):
    """One CLI invocation"""

    command: Literal["tate", "series", "verify", "torus", "psi"]
    path: Optional[str] = Field(None, description="Curve, data or lattice file")
    argument: Optional[int] = Field(None, ge=0, description="Inline parameter, the index a of psi")
    data_path: Optional[str] = Field(None, description="Claimed tower to verify a curve against")
    terms: int = Field(DEFAULT_SETTINGS.terms, ge=1)
    dmax: int = Field(DEFAULT_SETTINGS.dmax, ge=1)
    output_format: Literal["text", "json"] = "text"
    wild: bool = Field(False, description="Route wild curves through the wild elliptic tower")


class JobResult(BaseModel):
    """Rendered report and whether it certifies success"""

    report: Dict
    output: str
    passed: bool = True


def is_data_file(text: str) -> bool:
    """Abstract reduction data rather than a curve"""
    keys = {key for _, key, _, _ in read_key_values(text)}
    return bool(keys & _DATA_KEYS)


class JobRunner:
    """Dispatches a JobSpec to the computation modules and templates"""

    def __init__(self, settings: Settings = DEFAULT_SETTINGS):
        """Initialize the runner"""
        self.settings = settings
        self.templates = {
            "tate": TateTemplate(),
            "series": SeriesTemplate(),
            "psi": PsiTemplate(),
            "verify": VerifyTemplate(),
            "torus": TorusTemplate(),
        }

    def run(self, spec: JobSpec) -> JobResult:
        """
        Execute a job

        Args:
            spec: Validated job specification

        Returns:
            JobResult with the rendered report

        Raises:
            NeronError: Any computation or input failure
        """
        handlers = {
            "tate": self.cmd_tate,
            "series": self.cmd_series,
            "verify": self.cmd_verify,
            "torus": self.cmd_torus,
            "psi": self.cmd_psi,
        }
        report = handlers[spec.command](spec)
        template = self.templates[spec.command]
        if spec.output_format == "json":
            output = render_json(report)
        else:
            output = render_text(report, template.SECTIONS)
        return JobResult(report=report, output=output, passed=report.get("passed", True))

    def _read(self, spec: JobSpec) -> str:
        if not spec.path:
            raise ParseError(f"Command {spec.command} needs an input file")
        return Path(spec.path).read_text(encoding="utf-8")

    def _curve(self, text: str) -> WeierstrassModel:
        model = parse_curve_file(text)
        with_precision_retry(lambda precision: derived_quantities(model, precision), self.settings)
        return model

    def _curve_data(self, model: WeierstrassModel, wild: bool) -> Tuple[object, Union[ReductionData, WildEllipticData]]:
        try:
            return reduction_tower(model, self.settings)
        except WildCurve as exc:
            if not wild:
                raise WildCurve(f"{exc}; {WILD_HINT}") from exc
            return wild_elliptic_tower(model, self.settings)

    def cmd_tate(self, spec: JobSpec) -> Dict:
        model = self._curve(self._read(spec))
        kodaira, _ = tate_algorithm(model, self.settings)
        if kodaira.v_delta_min != kodaira.v_delta_input:
            logger.warning(
                "Input model is not minimal: v(Delta) %d reduced to %d",
                kodaira.v_delta_input,
                kodaira.v_delta_min,
            )
        logger.info("Reduction type %s, phi=%d", kodaira.kodaira_type, kodaira.phi)

        try:
            tower, _ = reduction_tower(model, self.settings)
            regime = "tame"
        except WildCurve:
            tower, _ = wild_elliptic_tower(model, self.settings)
            regime = "wild"
        return self.templates["tate"].build(kodaira, model.field.label, tower, regime)

    def cmd_series(self, spec: JobSpec) -> Dict:
        text = self._read(spec)
        if is_data_file(text):
            data = parse_data_file(text)
        else:
            _, data = self._curve_data(self._curve(text), spec.wild)

        if isinstance(data, WildEllipticData):
            report = assemble_wild_elliptic(data)
        else:
            report = assemble(data)
        return self.templates["series"].build(report, spec.terms)

    def cmd_verify(self, spec: JobSpec) -> Dict:
        text = self._read(spec)
        if is_data_file(text):
            report = verify_data(parse_data_file(text), spec.terms)
        else:
            claimed = None
            if spec.data_path:
                claimed = parse_data_file(Path(spec.data_path).read_text(encoding="utf-8"))
            settings = self.settings.model_copy(update={"dmax": spec.dmax})
            report = verify_curve(self._curve(text), spec.dmax, settings, claimed)
        if not report.passed:
            logger.warning("Verification failed: %s", "; ".join(report.failures))
        return self.templates["verify"].build(report)

    def cmd_torus(self, spec: JobSpec) -> Dict:
        action = parse_lattice_file(self._read(spec))
        phi_torus(action)
        return self.templates["torus"].build(action, invariants_rank(action), h1(action))

    def cmd_psi(self, spec: JobSpec) -> Dict:
        if spec.argument is None:
            raise ParseError("psi needs a nonnegative integer a")
        return self.templates["psi"].build(spec.argument, psi(spec.argument), spec.terms)
