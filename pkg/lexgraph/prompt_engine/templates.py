"""
``.templates.json`` loader.

Layout::

    {
      "N": 100,
      "score_floor": 0.05,
      "generic_template": "generic",
      "dimensions": [
        {"name": "domain", "weight": 0.6, "df": 10, "alpha": 0.1,
         "vocabulary": ["contract", "tort", ...]}
      ],
      "templates": [
        {"id": "civil_liability", "role_preamble": "...",
         "reasoning_path": ["Issue identification", "Rule statement", ...],
         "vectors": {"domain": [1, 0, ...]},
         "spec_term_counts": {"domain": 2}}
      ]
    }

A template that omits a dimension vector gets the zero vector for it.
"""

import json
from pathlib import Path
from typing import Any, TextIO, Union

from loguru import logger

from ..errors import TemplateError
from ..text import tokenize
from .models import FeatureDimension, ReasoningPathTemplate, TaskTemplate, TemplateSet


def _dimension(record: dict[str, Any], index: int) -> FeatureDimension:
    try:
        return FeatureDimension(
            name=str(record["name"]),
            weight=float(record["weight"]),
            df=int(record["df"]),
            alpha=float(record.get("alpha", 0.0)),
            vocabulary=tuple(" ".join(tokenize(str(w))) for w in record.get("vocabulary", [])),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise TemplateError(f"dimensions[{index}]: {e!r}") from e


def _template(
    record: dict[str, Any], index: int, dimensions: tuple[FeatureDimension, ...]
) -> TaskTemplate:
    try:
        vectors = record.get("vectors", {})
        unknown = set(vectors) - {d.name for d in dimensions}
        if unknown:
            raise TemplateError(f"templates[{index}]: unknown dimensions {sorted(unknown)}")
        return TaskTemplate(
            id=str(record["id"]),
            role_preamble=str(record.get("role_preamble", "")),
            reasoning_path=ReasoningPathTemplate(
                tuple(str(s) for s in record["reasoning_path"])
            ),
            dimension_vectors={
                d.name: tuple(float(x) for x in vectors.get(d.name, [0.0] * len(d.vocabulary)))
                for d in dimensions
            },
            spec_term_counts={
                str(k): int(v) for k, v in record.get("spec_term_counts", {}).items()
            },
        )
    except TemplateError as e:
        raise TemplateError(f"templates[{index}]: {e}") from e
    except (KeyError, TypeError, ValueError) as e:
        raise TemplateError(f"templates[{index}]: {e!r}") from e


def load_templates(source: Union[str, Path, TextIO]) -> TemplateSet:
    """
    Parse a template file from a path or an open text stream.

    Raises:
        TemplateError: on malformed JSON (with line and column) or on any
            template invariant violation.
    """
    name = str(source) if isinstance(source, (str, Path)) else getattr(source, "name", "<stream>")
    try:
        if isinstance(source, (str, Path)):
            with open(source, encoding="utf-8") as handle:
                document = json.load(handle)
        else:
            document = json.load(source)
    except OSError as e:
        raise TemplateError(f"cannot open template file {name}: {e}") from e
    except json.JSONDecodeError as e:
        raise TemplateError(f"{name}:{e.lineno}:{e.colno}: {e.msg}") from e
    if not isinstance(document, dict):
        raise TemplateError(f"{name}: top level must be an object")
    try:
        dimensions = tuple(
            _dimension(record, i) for i, record in enumerate(document.get("dimensions", []))
        )
        template_set = TemplateSet(
            dimensions=dimensions,
            n=int(document.get("N", 1)),
            templates=tuple(
                _template(record, i, dimensions)
                for i, record in enumerate(document.get("templates", []))
            ),
            generic_template_id=document.get("generic_template"),
            score_floor=float(document.get("score_floor", 0.0)),
        )
    except TemplateError as e:
        raise TemplateError(f"{name}: {e}") from e
    logger.info(
        f"Loaded {len(template_set.templates)} task templates over "
        f"{len(template_set.dimensions)} feature dimensions from {name}"
    )
    return template_set
