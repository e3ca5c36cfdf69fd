"""
错误类型。

所有错误都继承 EntanglementError (同时也是 ValueError)，每个子类带一个稳定的
`code`，CLI 据此输出单行、可被机器解析的错误信息。
"""


class EntanglementError(ValueError):
    code = "EntanglementError"

    def __init__(self, message, position=None):
        super().__init__(message)
        self.message = message
        self.position = position

    def as_dict(self):
        return {"error": self.code, "message": self.message, "position": self.position}


class LengthMismatch(EntanglementError):
    code = "LengthMismatch"


class ZeroVector(EntanglementError):
    code = "ZeroVector"


class NotNormalized(EntanglementError):
    code = "NotNormalized"


class NonFiniteAmplitude(EntanglementError):
    code = "NonFiniteAmplitude"


class InvalidParameters(EntanglementError):
    code = "InvalidParameters"


class InvalidDimensions(EntanglementError):
    code = "InvalidDimensions"


class KetSyntaxError(EntanglementError):
    """带位置的语法错误，position 为输入文本中的 0-based 字符下标。"""
    code = "SyntaxError"

    def __init__(self, message, position):
        super().__init__(message, position)

    def __str__(self):
        return f"position {self.position}: {self.message}"


class InconsistentKetLength(EntanglementError):
    code = "InconsistentKetLength"


class DigitExceedsDimension(EntanglementError):
    code = "DigitExceedsDimension"


class InvalidBipartition(EntanglementError):
    code = "InvalidBipartition"


class DimensionMismatch(EntanglementError):
    code = "DimensionMismatch"


class NotThreeParty(EntanglementError):
    code = "NotThreeParty"


class NotThreeQubit(EntanglementError):
    code = "NotThreeQubit"


class NotTwoQubit(EntanglementError):
    code = "NotTwoQubit"


class InvalidSubset(EntanglementError):
    code = "InvalidSubset"


class OverlappingSubsets(EntanglementError):
    code = "OverlappingSubsets"


class NotDensityMatrix(EntanglementError):
    code = "NotDensityMatrix"


class BadOutcomeIndex(EntanglementError):
    code = "BadOutcomeIndex"


class UnknownName(EntanglementError):
    code = "UnknownName"


class InvalidJob(EntanglementError):
    code = "InvalidJob"
