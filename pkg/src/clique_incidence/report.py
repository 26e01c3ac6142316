"""
Markdown rendering of JSON reports.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _table(headers: List[str], rows: List[List[Any]]) -> str:
    lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    lines += ["| " + " | ".join(_fmt(v) for v in row) + " |" for row in rows]
    return "\n".join(lines)


class ReportRenderer:
    """
    Renders a report dictionary as markdown.

    The markdown is built only from the JSON report, section by section;
    unknown sections are shown as JSON.
    """

    def __init__(self):
        """Initialize the report renderer."""
        self.logger = logging.getLogger(__name__)

    def render(self, report: Dict[str, Any]) -> str:
        command = report.get("command", "report")
        sections = [f"# {command} report"]
        sections.append(self._config_section(report))
        for key in sorted(report):
            if key in ("command", "config", "version", "tolerances"):
                continue
            sections.append(self._section(key, report[key]))
        sections.append(self._tolerance_section(report.get("tolerances", {})))
        return "\n\n".join(s for s in sections if s) + "\n"

    def write(self, report: Dict[str, Any], path: Path) -> None:
        Path(path).write_text(self.render(report))
        self.logger.info(f"Wrote markdown report: {path}")

    def _config_section(self, report: Dict[str, Any]) -> str:
        config = report.get("config", {})
        rows = [[key, json.dumps(value, sort_keys=True)] for key, value in sorted(config.items())]
        rows.append(["version", report.get("version")])
        return "## Configuration\n\n" + _table(["setting", "value"], rows)

    def _tolerance_section(self, tolerances: Dict[str, Any]) -> str:
        if not tolerances:
            return ""
        return "## Tolerances\n\n" + _table(["name", "value"], [[k, v] for k, v in sorted(tolerances.items())])

    def _section(self, key: str, value: Any) -> str:
        if key == "analysis":
            return self._analysis_section(value)
        elif key == "bounds":
            return "## Bounds\n\n" + self._bounds_table(value)
        elif key == "certificate":
            return self._certificate_section(value)
        elif key == "conjecture":
            return self._conjecture_section(value)
        elif key == "graphs":
            return "## Graphs\n\n" + _table(["#", "graph6"], [[i, g] for i, g in enumerate(value)])
        elif key == "energies":
            return "## Energies\n\n" + _table(["energy", "value"], [[k, v] for k, v in sorted(value.items())])
        elif isinstance(value, (dict, list)):
            return f"## {key}\n\n```json\n{json.dumps(value, sort_keys=True, indent=2)}\n```"
        return f"## {key}\n\n{_fmt(value)}"

    def _bounds_table(self, records: List[Dict[str, Any]]) -> str:
        rows = []
        for r in records:
            status = "n/a" if not r["applicable"] else ("ok" if r["holds"] else "FAILED")
            rows.append([r["theorem_id"], r["description"], r["lhs"], r["relation"], r["rhs"],
                         r["slack"], status, r["note"]])
        return _table(["id", "claim", "lhs", "rel", "rhs", "slack", "status", "note"], rows)

    def _analysis_section(self, analysis: Dict[str, Any]) -> str:
        graph = analysis["graph"]
        parts = [
            "## Graph",
            _table(["graph6", "n", "m", "regular"], [[graph["graph6"], graph["n"], graph["m"], graph["regular"]]]),
            "## Partition",
            _table(["provenance", "cliques", "clique degrees", "sizes"],
                   [[analysis["cover"]["provenance"], analysis["cover"]["cliques"],
                     analysis["clique_degrees"], analysis["clique_sizes"]]]),
            "## Spectra",
            _table(["matrix", "eigenvalues"],
                   [[name, ", ".join(f"{x:.6g}" for x in values)] for name, values in analysis["spectra"].items()]),
            "## Energies",
            _table(["energy", "value"], [[k, v] for k, v in sorted(analysis["energies"].items())]),
            "## Bounds",
            self._bounds_table(analysis["bounds"]),
        ]
        return "\n\n".join(parts)

    def _certificate_section(self, cert: Dict[str, Any]) -> str:
        ssp = cert.get("ssp") or {}
        rows = [[cert["name"], cert["target"], cert["n"], cert["k"], cert["c"], cert["status"],
                 ssp.get("has_ssp"), cert["provenance"]]]
        text = "## Certificate\n\n" + _table(["name", "target", "n", "k", "c", "status", "SSP", "provenance"], rows)
        if cert.get("failure_reason"):
            text += f"\n\nFailure: {cert['failure_reason']}"
        return text

    def _conjecture_section(self, conjecture: Dict[str, Any]) -> str:
        rows = [[case["removed"], case["m"], case["certified"], case["method"]] for case in conjecture["cases"]]
        header = (f"## Conjecture n={conjecture['n']}\n\n"
                  f"All certified: {_fmt(conjecture['all_certified'])}\n\n")
        if conjecture["uncertified"]:
            header += f"Uncertified: {', '.join(conjecture['uncertified'])}\n\n"
        return header + _table(["removed (graph6)", "edges", "certified", "method"], rows)
