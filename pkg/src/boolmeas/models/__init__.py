"""
Models Package

Declarative models for a boolmeas run.

RunConfig   = settings shared by every command (seed, format, caps)
schema      = versioned JSON input/output envelopes and the per-command
              input parsers
"""

from .run_config import PRESET_CONFIGS, RunConfig, get_preset_config

__all__ = ['RunConfig', 'PRESET_CONFIGS', 'get_preset_config']
