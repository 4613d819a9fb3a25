"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures without knowing each class: 2 for unreadable or unparsable input,
3 for inputs that parse but disagree with each other.
"""


class MetasentError(Exception):
    exit_code = 2

    @property
    def code(self):
        return type(self).__name__


class InputError(MetasentError):
    """Input could not be read or parsed."""

    exit_code = 2


class ConsistencyError(MetasentError):
    """Inputs parsed fine but do not fit together."""

    exit_code = 3


# -- tags ---------------------------------------------------------------------


class TagError(InputError, ValueError):
    def __init__(self, raw, message):
        super().__init__(f"{message}: {raw!r}")
        self.raw = raw


class EmptyTag(TagError):
    def __init__(self, raw=""):
        super().__init__(raw, "empty tag")


class BadLeadingChar(TagError):
    def __init__(self, raw):
        super().__init__(raw, "tag must start with an uppercase ASCII letter")


class InvalidTagCharacter(TagError):
    def __init__(self, raw):
        super().__init__(raw, "tag contains whitespace or a candidate separator")


class MixedSigns(TagError):
    def __init__(self, raw):
        super().__init__(raw, "tag ends in a mix of '+' and '-'")


class ExcessIntensity(TagError):
    def __init__(self, raw):
        super().__init__(raw, "more than 3 trailing sign characters")


# -- tagged text --------------------------------------------------------------


class TaggedTextError(InputError):
    pass


class TagParseError(TaggedTextError):
    """A tag inside tagged text failed to parse; ``position`` is the token index."""

    def __init__(self, position, surface, cause):
        super().__init__(f"token {position} ({surface!r}): {cause}")
        self.position = position
        self.surface = surface
        self.cause = cause


class EmptySurface(TaggedTextError):
    def __init__(self, position):
        super().__init__(f"token {position} has an empty surface form")
        self.position = position


class XmlError(TaggedTextError):
    def __init__(self, byte_offset, message):
        super().__init__(f"malformed XML at byte {byte_offset}: {message}")
        self.byte_offset = byte_offset


# -- corpus -------------------------------------------------------------------


class CorpusError(InputError):
    pass


class MissingColumn(CorpusError):
    pass


class BadPolarityLabel(CorpusError):
    pass


class BadTaggedFormat(CorpusError):
    pass


class BadMetaphor(CorpusError):
    pass


class DuplicateId(CorpusError):
    pass


class BadPlaceholder(InputError, ValueError):
    pass


class CollidingPlaceholder(InputError, ValueError):
    pass


# -- classification / evaluation ----------------------------------------------


class NotEmotionTag(MetasentError, ValueError):
    pass


class IdMismatch(ConsistencyError):
    pass


class ReviewError(InputError):
    """Wraps a failure while processing one review so the id is reported."""

    def __init__(self, review_id, cause):
        super().__init__(f"review {review_id}: {cause}")
        self.review_id = review_id
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 2)

    @property
    def code(self):
        return getattr(self.cause, "code", type(self.cause).__name__)


class MissingResult(ConsistencyError):
    pass


class DuplicateResult(ConsistencyError):
    pass


class CategoryMismatch(ConsistencyError):
    pass


class ReportFormatError(InputError):
    pass
