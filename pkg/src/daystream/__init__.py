"""daystream: plan, log, and reflect on self-defined daily activities.

The package is organized around a small set of value types (activities,
minute-resolution intervals, day records) with pure operations layered on
top: hourly binning, mirrored stream layout, plan-vs-log pattern
detection, adherence scoring, a role-play scenario simulator, and a JSON
journal file. An HTTP facade and a CLI expose the same operations.
"""

__version__ = "0.1.0"
