"""Discovery of wave presets."""

import importlib
import inspect
import pkgutil
from pathlib import Path

from wave_assembly.utils.discovery import discover_external_plugins

PRESET_ENTRY_POINT_GROUP = "wave_assembly.presets"


def discover_preset_classes() -> list[type]:
    """Find every named preset class.

    Built-in presets come from a scan of ``wave_assembly.plugins.presets``;
    external ones from the ``wave_assembly.presets`` entry-point group.
    """
    from wave_assembly.plugins.presets import AbstractPreset

    preset_classes = _discover_builtin_presets(AbstractPreset)
    for preset_class in discover_external_plugins("preset", PRESET_ENTRY_POINT_GROUP, AbstractPreset).values():
        if preset_class not in preset_classes:
            preset_classes.append(preset_class)
    return preset_classes


def _discover_builtin_presets(abstract_preset_class: type) -> list[type]:
    import wave_assembly.plugins.presets as presets_package

    preset_classes = []
    package_path = Path(presets_package.__file__).parent
    for module_info in pkgutil.iter_modules([str(package_path)]):
        if module_info.name.startswith("_") or module_info.name == "abstract_preset":
            continue
        try:
            module = importlib.import_module(f"wave_assembly.plugins.presets.{module_info.name}")
        except ImportError:
            continue
        for _name, obj in inspect.getmembers(module, inspect.isclass):
            # Bases without a NAME only share build logic
            if issubclass(obj, abstract_preset_class) and obj.__module__ == module.__name__ and obj.NAME:
                preset_classes.append(obj)
    return preset_classes


def create_default_preset_registry():
    """Registry holding every discovered preset."""
    from .preset_registry import PresetRegistry

    registry = PresetRegistry()
    for preset_class in discover_preset_classes():
        registry.register(preset_class)
    return registry
