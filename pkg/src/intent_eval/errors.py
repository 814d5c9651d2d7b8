"""Exception hierarchy. Every error carries a short machine-parsable code
used by the CLI for its single-line error output."""


class IntentEvalError(Exception):
    code = "ERROR"


# corpus loading
class MalformedRecord(IntentEvalError):
    code = "MALFORMED_RECORD"

    def __init__(self, path, line_no, reason):
        self.path = str(path)
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"{self.path}:{line_no}: {reason}")


class DanglingReference(IntentEvalError):
    code = "DANGLING_REFERENCE"


class DuplicateDocumentId(IntentEvalError):
    code = "DUPLICATE_DOC_ID"


class EmptyCorpus(IntentEvalError):
    code = "EMPTY_CORPUS"


# intent metric
class EmptyPhrase(IntentEvalError):
    code = "EMPTY_PHRASE"


class EmptySummary(IntentEvalError):
    code = "EMPTY_SUMMARY"


class NoPhrases(IntentEvalError):
    code = "NO_PHRASES"


# shared numeric domains
class DomainError(IntentEvalError):
    code = "DOMAIN_ERROR"


class EmptyInput(IntentEvalError):
    code = "EMPTY_INPUT"


class EmptyList(IntentEvalError):
    code = "EMPTY_LIST"


class EmptyReference(IntentEvalError):
    code = "EMPTY_REFERENCE"


# embeddings
class DimensionMismatch(IntentEvalError):
    code = "DIMENSION_MISMATCH"


class DuplicateKey(IntentEvalError):
    code = "DUPLICATE_KEY"


class ParseError(IntentEvalError):
    code = "PARSE_ERROR"


class MissingEmbedding(IntentEvalError):
    code = "MISSING_EMBEDDING"


# transport
class UnbalancedMass(IntentEvalError):
    code = "UNBALANCED_MASS"


class NonFiniteCost(IntentEvalError):
    code = "NON_FINITE_COST"


# statistics
class LengthMismatch(IntentEvalError):
    code = "LENGTH_MISMATCH"


class DegenerateSeries(IntentEvalError):
    code = "DEGENERATE_SERIES"


class DegenerateMarginals(IntentEvalError):
    code = "DEGENERATE_MARGINALS"


# cli / reports
class ConfigError(IntentEvalError):
    code = "CONFIG_ERROR"


class MissingScore(IntentEvalError):
    code = "MISSING_SCORE"


class InsufficientData(IntentEvalError):
    code = "INSUFFICIENT_DATA"
