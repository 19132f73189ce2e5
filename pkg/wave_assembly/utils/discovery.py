"""Entry-point plugin discovery for wave-assembly."""

import importlib.metadata

from wave_assembly.output import MessageType, VerbosityLevel, message


def discover_external_plugins(
    plugin_type: str,
    entry_point_group: str,
    base_class: type | None = None,
) -> dict[str, type]:
    """Load plugin classes registered under an entry-point group.

    Args:
        plugin_type: Human-readable name for logging (e.g. "preset")
        entry_point_group: Entry point group name (e.g. "wave_assembly.presets")
        base_class: Optional base class every loaded class must derive from

    Returns:
        Mapping of entry-point name to loaded class. Entry points that fail to
        load or do not derive from ``base_class`` are reported and skipped.
    """
    plugins: dict[str, type] = {}

    try:
        entry_points = importlib.metadata.entry_points().select(group=entry_point_group)
    except Exception as e:
        message(f"Failed to list {plugin_type} entry points: {e}", MessageType.DEBUG, VerbosityLevel.DEBUG)
        return plugins

    for ep in entry_points:
        try:
            loaded_class = ep.load()
        except Exception as e:
            message(f"Failed to load {plugin_type} plugin '{ep.name}': {e}", MessageType.WARNING, VerbosityLevel.VERBOSE)
            continue

        if base_class is not None and not (isinstance(loaded_class, type) and issubclass(loaded_class, base_class)):
            message(
                f"Entry point '{ep.name}' does not point to a valid {plugin_type} class",
                MessageType.WARNING,
                VerbosityLevel.VERBOSE,
            )
            continue

        plugins[ep.name] = loaded_class
        message(f"Discovered external {plugin_type} plugin: {ep.name}", MessageType.DEBUG, VerbosityLevel.DEBUG)

    return plugins
