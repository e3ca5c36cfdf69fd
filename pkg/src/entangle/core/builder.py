import json
import logging
import math
import os

import numpy as np

from configs import numerics

logger = logging.getLogger(__name__)


class ReportBuilder:
    def __init__(self, command, source_echo=None, options_echo=None):
        """
        初始化报告文档 (ReportDocument)。

        文档是嵌套的 dict/list，顶层固定有 schema、command、input、results。
        一次调用只产生一个文档。

        :param command: 子命令名
        :param source_echo: 输入来源的回显
        :param options_echo: 选项的回显
        """
        self.document = {
            "schema": numerics.SCHEMA_VERSION,
            "command": command,
            "input": {},
            "results": [],
        }
        if source_echo is not None:
            self.document["input"]["source"] = source_echo
        if options_echo is not None:
            self.document["input"]["options"] = options_echo

    def add_result(self, **entry):
        """追加一条结果 (每个态一条)"""
        self.document["results"].append(_plain(entry))
        return self

    def set_summary(self, **summary):
        self.document["summary"] = _plain(summary)
        return self

    def get_document(self):
        return self.document

    def save_report(self, output_path, fmt="json"):
        save_document(self.document, output_path, fmt)


def save_document(document, output_path, fmt="json"):
    """
    把文档写到磁盘，目录不存在时自动创建。

    :param document: ReportDocument (dict)
    :param output_path: 输出文件路径
    :param fmt: "json" 或 "text"
    """
    os.makedirs(os.path.dirname(os.path.abspath(output_path)), exist_ok=True)
    with open(output_path, "w", encoding="utf-8") as f:
        f.write(render(document, fmt))
    logger.info(f"Report successfully saved to {output_path}")


def _plain(value):
    """numpy 标量/数组 -> Python 原生类型；复数 -> [re, im]"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    return value


def _format_float(x, digits):
    if math.isnan(x) or math.isinf(x):
        return None
    text = format(x, f".{digits}g")
    # -0 统一成 0，保证输出稳定
    return "0" if text in ("-0", "0") else text


def _json_lines(value, indent, level):
    pad = " " * (indent * (level + 1))
    end_pad = " " * (indent * level)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_json_lines(v, indent, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end_pad + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        items = [pad + _json_lines(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end_pad + "]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        text = _format_float(value, numerics.MACHINE_DIGITS)
        return "null" if text is None else text
    return json.dumps(value, ensure_ascii=False)


def render_json(document, indent=2):
    """机器可读输出：浮点数按 17 位有效数字写出 (无损)"""
    return _json_lines(_plain(document), indent, 0) + "\n"


def _text_lines(value, level, lines, key=None):
    pad = "  " * level
    prefix = f"{pad}{key}:" if key is not None else f"{pad}-"
    if isinstance(value, dict):
        if key is not None:
            lines.append(prefix)
            level += 1
        for k, v in value.items():
            _text_lines(v, level, lines, k)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        lines.append(prefix)
        for v in value:
            if isinstance(v, dict):
                first = True
                for k, item in v.items():
                    sub = []
                    _text_lines(item, level + 2, sub, k)
                    if first:
                        sub[0] = "  " * (level + 1) + "- " + sub[0].lstrip()
                        first = False
                    lines.extend(sub)
            else:
                _text_lines(v, level + 1, lines)
    else:
        lines.append(f"{prefix} {_text_scalar(value)}")


def _text_scalar(value):
    if isinstance(value, list):
        return "[" + ", ".join(_text_scalar(v) for v in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, float):
        text = _format_float(value, numerics.TEXT_DIGITS)
        return "nan" if text is None else text
    return str(value)


def render_text(document):
    """可读输出：与 JSON 输出同样的字段，浮点数保留 7 位有效数字"""
    lines = []
    _text_lines(_plain(document), 0, lines)
    return "\n".join(lines) + "\n"


def render(document, fmt="text"):
    if fmt == "json":
        return render_json(document)
    return render_text(document)
