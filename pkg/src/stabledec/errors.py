"""Exception types shared across the library."""


class StabledecError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(StabledecError):
    """Input text or data does not match the expected shape."""


class InconsistentRanking(StabledecError):
    """An agent's ranking is not a strict list of own coalitions."""


class AgentIdOutOfRange(StabledecError):
    """An agent id falls outside 1..n."""


class AgentNotMember(StabledecError):
    """An operation asked about an agent that is not in the coalition."""


class EmptyCollection(StabledecError):
    """A coalition collection with no non-single member was supplied."""


class LimitExceeded(StabledecError):
    """An enumeration or graph growth exceeded the configured node limit."""


class NotBlocking(StabledecError):
    """The coalition does not block the structure, so it cannot dominate it."""


class NodeNotInGraph(StabledecError):
    """The structure is not a node of the domination graph."""


class NotACycle(StabledecError):
    """The structure sequence is not a domination cycle."""


class StartNotInCycle(StabledecError):
    """The start coalition never forms along the given cycle."""


class NotARingComponent(StabledecError):
    """The coalition collection is not a ring component."""


class TrivialAbsorbingSet(StabledecError):
    """The operation needs a non-trivial absorbing set."""


class PartyIsSingletonPool(StabledecError):
    """A singleton pool cannot prevent coalition formation."""


class DisjointParty(StabledecError):
    """The party shares no agent with the coalition."""


class MalformedParty(StabledecError):
    """The coalition collection is not a valid party."""


class MalformedSpec(StabledecError):
    """A roommate or marriage specification is inconsistent."""


class VerificationFailed(StabledecError):
    """An internal consistency re-check failed; indicates a bug or bad input."""
