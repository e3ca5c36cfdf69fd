import json
import logging
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from configs import numerics
from .core.catalog import catalog
from .core.errors import EntanglementError, InvalidJob, InvalidParameters
from .core.state import Tolerances, random_pure
from .parser import parse_ket_expr

logger = logging.getLogger(__name__)

COMMANDS = ("eval", "polygon", "sweep", "teleport", "catalog")
FORMATS = ("text", "json")


def parse_dims(text):
    """'2,2,2' 或 [2, 2, 2] -> (2, 2, 2)"""
    if isinstance(text, str):
        try:
            return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
        except ValueError:
            raise InvalidParameters(f"bad dims {text!r}: expected comma separated integers")
    try:
        return tuple(int(x) for x in text)
    except (TypeError, ValueError):
        raise InvalidParameters(f"bad dims {text!r}: expected a list of integers")


def parse_base(value):
    """命令行/JSON 中的 '2' / 'e' -> 2 / 'e'"""
    if value in (2, "2"):
        return 2
    if value == "e":
        return "e"
    raise InvalidParameters(f"log base must be 2 or e, got {value!r}")


@dataclass(frozen=True)
class StateSource:
    """
    态的来源，三选一：
    - ket: ket 表达式文本
    - catalog: 目录名
    - random: dims + seed + count
    """
    ket: Optional[str] = None
    catalog: Optional[str] = None
    random: Optional[Tuple[int, ...]] = None
    seed: int = 0
    count: int = 1
    dims_hint: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        given = [name for name in ("ket", "catalog", "random") if getattr(self, name) is not None]
        if len(given) != 1:
            raise InvalidJob(f"exactly one state source is required (ket, catalog or random), got {given or 'none'}")
        if self.count < 1:
            raise InvalidJob(f"count must be >= 1, got {self.count}")

    def echo(self):
        if self.ket is not None:
            data = {"ket": self.ket}
            if self.dims_hint is not None:
                data["dims"] = list(self.dims_hint)
            return data
        if self.catalog is not None:
            return {"catalog": self.catalog}
        return {"random": {"dims": list(self.random), "seed": self.seed, "count": self.count}}


@dataclass(frozen=True)
class JobOptions:
    splits: Tuple[str, ...] = ()
    base: Any = numerics.DEFAULT_LOG_BASE
    tol: float = numerics.EQUALITY_TOL
    format: str = "text"
    out: Optional[str] = None
    normalize: bool = False
    resource: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "base", parse_base(self.base))
        if self.format not in FORMATS:
            raise InvalidJob(f"format must be one of {FORMATS}, got {self.format!r}")
        if not self.tol > 0:
            raise InvalidJob(f"tol must be strictly positive, got {self.tol}")

    @property
    def tolerances(self):
        return Tolerances().with_equality_tol(self.tol)

    def echo(self):
        data = asdict(self)
        data["splits"] = list(self.splits)
        data.pop("out")
        return data


@dataclass(frozen=True)
class JobSpec:
    command: str
    source: Optional[StateSource] = None
    options: JobOptions = field(default_factory=JobOptions)
    # sweep / catalog 专用参数
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidJob(f"unknown command {self.command!r}; expected one of {COMMANDS}")
        if self.command in ("eval", "polygon", "teleport") and self.source is None:
            raise InvalidJob(f"command {self.command!r} needs a state source")

    @classmethod
    def from_dict(cls, data):
        """
        从 JSON 对象构造：
        {"command": "eval", "source": {"ket": "|00>"}, "options": {"splits": ["0|1"]}}
        """
        if not isinstance(data, dict):
            raise InvalidJob(f"job must be a JSON object, got {type(data).__name__}")
        extra = {k: v for k, v in data.items() if k not in ("command", "source", "options")}
        try:
            source = None
            raw_source = data.get("source")
            if raw_source is not None:
                source = _source_from_dict(raw_source)
            options = dict(data.get("options") or {})
            if "splits" in options:
                options["splits"] = tuple(options["splits"])
            return cls(data.get("command"), source, JobOptions(**options), extra)
        except InvalidJob:
            raise
        except (TypeError, ValueError) as e:
            # 包括 parse_base / parse_dims 抛出的 InvalidParameters
            raise InvalidJob(f"bad job: {e}")


def _source_from_dict(raw):
    if not isinstance(raw, dict):
        raise InvalidJob("source must be an object with one of 'ket', 'catalog', 'random'")
    random_raw = raw.get("random")
    if random_raw is not None:
        if not isinstance(random_raw, dict) or "dims" not in random_raw:
            raise InvalidJob("random source needs {'dims': [...], 'seed': int, 'count': int}")
        return StateSource(random=parse_dims(random_raw["dims"]),
                           seed=int(random_raw.get("seed", 0)),
                           count=int(random_raw.get("count", 1)),
                           ket=raw.get("ket"), catalog=raw.get("catalog"))
    dims_hint = raw.get("dims")
    return StateSource(ket=raw.get("ket"), catalog=raw.get("catalog"),
                       dims_hint=parse_dims(dims_hint) if dims_hint is not None else None)


def resolve_states(source, options=JobOptions()):
    """
    按来源生成态列表。random 来源的第 i 个态使用 seed + i。

    :return: [(label, PureState)]
    """
    if source.ket is not None:
        state = parse_ket_expr(source.ket, source.dims_hint, normalize=options.normalize,
                               tolerances=options.tolerances)
        return [(source.ket, state)]
    if source.catalog is not None:
        return [(source.catalog, catalog(source.catalog))]
    return [(f"random(seed={source.seed + i})", random_pure(source.random, source.seed + i))
            for i in range(source.count)]


class JobLoader:
    """
    读取 JSON job 文件。

    一个文件可以是单个 job 对象，也可以是 job 列表；多个文件自动合并。
    支持像 List 一样操作 (len(), loader[0], for job in loader)。
    """

    def __init__(self, paths, auto_load=True):
        """
        :param paths: 单个路径或路径列表
        :param auto_load: 是否在初始化时立即加载
        """
        if isinstance(paths, (str, Path)):
            paths = [paths]
        self.paths = [Path(p) for p in paths]
        self._jobs: List[JobSpec] = []
        if auto_load:
            self.load()

    def load(self):
        self._jobs = []
        for path in self.paths:
            for index, raw in enumerate(self._read_json(path)):
                try:
                    self._jobs.append(JobSpec.from_dict(raw))
                except EntanglementError as e:
                    logger.error(f"{path} 第 {index} 个 job 无效，已跳过: {e.message}")
        logger.info(f"job 加载完成，共 {len(self._jobs)} 个。")
        return self

    def _read_json(self, path):
        """读取单个 JSON 文件；文件不存在或格式错误时记录日志并返回空列表"""
        if not path.exists():
            logger.warning(f"文件不存在: {path}，跳过加载。")
            return []
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError:
            logger.error(f"文件格式错误（非标准 JSON）: {path}")
            return []
        return data if isinstance(data, list) else [data]

    def __len__(self):
        return len(self._jobs)

    def __getitem__(self, idx):
        return self._jobs[idx]

    def __iter__(self):
        return iter(self._jobs)
