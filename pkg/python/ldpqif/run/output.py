"""
    Copyright 2024 Contributors

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.

    Data files of the commands.

    CSV files start with one comment line naming the command, the schema
    version and the columns. Files are written to a temporary file and
    renamed, so a failed command leaves no partial output.
"""
import io
import json
import logging
import math
import os
import sys

from ..config.config import CSV_SCHEMA_VERSION, OUTPUT_FORMAT_CSV, OUTPUT_FORMAT_JSON
from ..errors import ConfigError
from ..utils import atomic_write

logger = logging.getLogger(__name__)

def schema_header(command, columns):
    """ The comment line heading a CSV file. """
    return f"# ldpqif {command} schema v{CSV_SCHEMA_VERSION}: {','.join(columns)}\n"

def _records(frame):
    # NaN and None both become JSON null
    frame = frame.astype(object).where(frame.notna(), None)
    return frame.to_dict(orient="records")

def _emit(out, write_fn):
    if out is None:
        write_fn(sys.stdout)
    else:
        with atomic_write(out) as f:
            write_fn(f)
        logger.info("Wrote %s.", out)

def write_frame(frame, out, file_format, command):
    """ Write a result table.

    Parameters
    ----------
    frame : pandas.DataFrame
    out : str
        Output path, or None for standard output.
    file_format : str
        "csv" or "json".
    command : str
        Command name recorded in the header.
    """
    assert file_format in (OUTPUT_FORMAT_CSV, OUTPUT_FORMAT_JSON), \
        f"Unknown output format {file_format}"
    columns = list(frame.columns)
    if file_format == OUTPUT_FORMAT_CSV:
        def write_fn(f):
            f.write(schema_header(command, columns))
            frame.to_csv(f, index=False)
    else:
        payload = _json_safe({"command": command, "schema_version": CSV_SCHEMA_VERSION,
                              "columns": columns, "rows": _records(frame)})
        def write_fn(f):
            json.dump(payload, f, sort_keys=True, indent=2)
            f.write("\n")
    _emit(out, write_fn)

def _json_safe(obj):
    # non-finite floats become the strings "inf", "-inf" and "nan"
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {key: _json_safe(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(val) for val in obj]
    return obj

def write_json(payload, out):
    """ Write a JSON document with sorted keys. """
    payload = _json_safe(payload)
    def write_fn(f):
        json.dump(payload, f, sort_keys=True, indent=2)
        f.write("\n")
    _emit(out, write_fn)

def svg_path(out, metric):
    """ <out without extension>.<metric>.svg """
    stem = os.path.splitext(out)[0]
    return f"{stem}.{metric}.svg"

def render_svg_charts(frame, out, x, y, series, metric):
    """ Render one line chart per value of the `metric` column.

    Charts are rendered in memory with matplotlib's Agg backend, a fixed SVG
    hash salt and no date metadata, so reruns produce identical files.
    Nothing is written; pass the result to `write_charts` once every other
    output of the command is ready.

    Parameters
    ----------
    frame : pandas.DataFrame
    out : str
        The data file path; charts go next to it.
    x, y : str
        Columns of the axes.
    series : list of str
        Columns whose values label one line each.
    metric : str
        Column splitting the table into charts.

    Returns
    -------
    list of (str, bytes) : chart paths and their SVG documents.
    """
    if out is None:
        raise ConfigError("SVG charts need an output path.")
    try:
        import matplotlib # pylint: disable=import-outside-toplevel
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt # pylint: disable=import-outside-toplevel
    except ImportError as err:
        raise ConfigError("SVG charts need matplotlib (pip install ldpqif[plot]).") from err
    matplotlib.rcParams["svg.hashsalt"] = "ldpqif"

    charts = []
    for metric_val, part in frame.groupby(metric, sort=False):
        fig, ax = plt.subplots(figsize=(6, 4))
        for key, line in part.groupby(series, sort=False, dropna=False):
            key = key if isinstance(key, tuple) else (key,)
            label = " ".join(f"{col}={val}" for col, val in zip(series, key)
                             if val is not None and val == val)
            line = line.sort_values(x)
            ax.plot(line[x].to_numpy(dtype=float), line[y].to_numpy(dtype=float),
                    marker="o", label=label)
        ax.set_xlabel(x)
        ax.set_ylabel(str(metric_val))
        ax.legend(fontsize="small")
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
        charts.append((svg_path(out, metric_val), buf.getvalue()))
    return charts

def write_charts(charts):
    """ Write charts from `render_svg_charts`. Returns the chart paths. """
    paths = []
    for path, svg in charts:
        with atomic_write(path, "wb") as f:
            f.write(svg)
        logger.info("Wrote %s.", path)
        paths.append(path)
    return paths
