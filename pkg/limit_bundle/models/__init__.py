from .suite_models import CheckRecord, SuiteConfig, SuiteReport

__all__ = ["CheckRecord", "SuiteConfig", "SuiteReport"]
