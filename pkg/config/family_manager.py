import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from common.errors import FamilySpecError, GeneratorError
from config.settings import get_settings
from generators.random_graphs import STEINER_RULES, parse_weight_range

logger = logging.getLogger(__name__)

FAMILY_FILE = re.compile(r"^(.*?)_family\.json$")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    sizes: tuple[int, ...]
    steiner_rule: str
    density: float
    weights: tuple[int, int]
    seed: int
    description: str = ""


class FamilyManager:
    """
    Bench families live as '<name>_family.json' files in the families directory;
    an inline 'n=16,32;steiner=n;density=0.3;weights=1-10;seed=5' string works too.
    """

    def __init__(self, families_dir: Optional[Path] = None):
        self.families_path = Path(families_dir) if families_dir else get_settings().families_dir

    def get_available_families(self) -> List[str]:
        """Scans the families directory and returns the sorted family names."""
        if not self.families_path.exists():
            logger.warning(f"⚠️ Family directory not found: {self.families_path}")
            return []

        names = []
        for entry in self.families_path.iterdir():
            if entry.is_file():
                match = FAMILY_FILE.match(entry.name)
                if match:
                    names.append(match.group(1))
        names.sort()
        logger.info(f"✅ Found bench families: {names}")
        return names

    def load(self, spec: str) -> FamilySpec:
        """A family name from the directory, or an inline key=value spec."""
        if "=" in spec:
            return self.parse_inline(spec)

        path = self.families_path / f"{spec}_family.json"
        if not path.is_file():
            raise FamilySpecError(f"unknown family {spec!r}; available: {', '.join(self.get_available_families())}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            return self._validated(
                name=spec,
                sizes=tuple(int(n) for n in data["Sizes"]),
                steiner_rule=str(data["SteinerRule"]),
                density=float(data["Density"]),
                weights=str(data["Weights"]),
                seed=int(data.get("Seed", get_settings().seed)),
                description=data.get("Description", ""),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise FamilySpecError(f"family file {path.name} is malformed: {e}") from e

    def parse_inline(self, spec: str) -> FamilySpec:
        fields = {}
        for part in spec.split(";"):
            part = part.strip()
            if not part:
                continue
            key, sep, value = part.partition("=")
            if not sep:
                raise FamilySpecError(f"expected key=value in family spec, got {part!r}")
            fields[key.strip()] = value.strip()

        try:
            return self._validated(
                name="inline",
                sizes=tuple(int(n) for n in fields["n"].split(",")),
                steiner_rule=fields.get("steiner", "n"),
                density=float(fields.get("density", "0.3")),
                weights=fields.get("weights", "1-10"),
                seed=int(fields.get("seed", get_settings().seed)),
            )
        except KeyError:
            raise FamilySpecError("inline family spec needs at least n=<sizes>") from None
        except ValueError as e:
            raise FamilySpecError(f"inline family spec is malformed: {e}") from e

    @staticmethod
    def _validated(name: str, sizes: tuple[int, ...], steiner_rule: str, density: float, weights: str,
                   seed: int, description: str = "") -> FamilySpec:
        if not sizes or any(n < 2 for n in sizes):
            raise FamilySpecError(f"family sizes must all be >= 2, got {list(sizes)}")
        if steiner_rule not in STEINER_RULES:
            raise FamilySpecError(f"Steiner rule {steiner_rule!r} is not one of {', '.join(STEINER_RULES)}")
        if not 0.0 <= density <= 1.0:
            raise FamilySpecError(f"density must lie in [0, 1], got {density}")
        try:
            weight_range = parse_weight_range(weights)
        except GeneratorError as e:
            raise FamilySpecError(str(e)) from e
        if weight_range[0] < 0 or weight_range[0] > weight_range[1]:
            raise FamilySpecError(f"invalid weight range {weights}")
        return FamilySpec(name, sizes, steiner_rule, density, weight_range, seed, description)
