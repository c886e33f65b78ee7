"""Human-readable rendering of CLI results."""
from pathlib import Path
from typing import Any, Dict

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from helpers.logger import get_logger

logger = get_logger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"


class TraceRenderer:
    """Jinja2 renderer over braess/reports/templates"""

    def __init__(self, template_dir: Path = TEMPLATE_DIR):
        self.jinja_env = Environment(
            loader=FileSystemLoader(str(template_dir)),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
        )

    def render(self, template: str, context: Dict[str, Any]) -> str:
        try:
            return self.jinja_env.get_template(template).render(**context)
        except Exception as e:
            logger.error(f"Template rendering failed: {e}")
            raise


def render_trace(result: Dict[str, Any]) -> str:
    """Text trace of a `check` result as produced by model_dump(mode="json")."""
    return TraceRenderer().render("trace.jinja", {"result": result})
