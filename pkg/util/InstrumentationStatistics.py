from enum import Enum
from datetime import datetime, timedelta
from uuid import uuid4
from util import RamseyLogging


class Statistic_Event_Types(Enum):
    EVENT_STEP1_ADVANCE = 0
    EVENT_STEP2_BUILD = 1
    EVENT_STEP3_NORMALIZE = 2
    EVENT_STEP4_FIXUP = 3
    EVENT_VERIFY = 4
    EVENT_ENUMERATE = 5

    @classmethod
    def getPrettyString(cls, value: int):
        pretty_event_strings = ["Restricting to radicals (Step 1)",
                                "Building staircases (Step 2)",
                                "Normalizing pair blocks (Step 3)",
                                "Injecting tube fibres (Step 4)",
                                "Verifying witnesses",
                                "Enumerating subspaces"]
        return pretty_event_strings[value]

    @classmethod
    def getIteratable(cls):
        return [cls.EVENT_STEP1_ADVANCE, cls.EVENT_STEP2_BUILD, cls.EVENT_STEP3_NORMALIZE,
                cls.EVENT_STEP4_FIXUP, cls.EVENT_VERIFY, cls.EVENT_ENUMERATE]


class Statistics_Timed_Event():
    def __init__(self, type: Statistic_Event_Types):
        self._start = None
        self._end = None
        self.type = type
        self.id = uuid4()
        self.start()

    def start(self, t: datetime = None):
        self._start = t if t else datetime.now()

    def end(self, t: datetime = None):
        self._end = t if t else datetime.now()

    def isCompleted(self):
        return self._start is not None and self._end is not None

    def getDuration(self):
        return self._end - self._start


class InstrumentationStatistics():
    """Wall-clock bookkeeping for solver stages. Only ever logged, never fed back into a computation."""

    _STATISTICS = None

    def __init__(self):
        self.events = {}
        self.completed = {}

    def logReport(self):
        logger = RamseyLogging.getLogger(__name__)
        accumulatedtime = timedelta(0)
        for s in Statistic_Event_Types.getIteratable():
            if s.name in self.completed.keys():
                arrayofevents = self.completed[s.name]
                totaltime = timedelta(0)
                for e in arrayofevents:
                    totaltime += e.getDuration()
                ave = totaltime / len(arrayofevents)
                accumulatedtime += totaltime
                logger.info("Time for %s: %s over %d calls, on average, %s.",
                            Statistic_Event_Types.getPrettyString(s.value), totaltime, len(arrayofevents), ave)
        logger.info("Total instrumented time: %s", accumulatedtime)

    def countFor(self, type: Statistic_Event_Types):
        return len(self.completed.get(type.name, []))

    def timeEventStart(self, type: Statistic_Event_Types):
        evt = Statistics_Timed_Event(type)
        self.events[evt.id] = evt
        return evt.id

    def timeEventEnd(self, id):
        evt = self.events.pop(id)
        evt.end()
        if evt.type.name not in self.completed.keys():  # keyed by name for readability
            self.completed[evt.type.name] = []
        self.completed[evt.type.name].append(evt)

    @staticmethod
    def getStatistics():
        if not InstrumentationStatistics._STATISTICS:
            InstrumentationStatistics._STATISTICS = InstrumentationStatistics()
        return InstrumentationStatistics._STATISTICS

    @staticmethod
    def destroyStatistics():
        InstrumentationStatistics._STATISTICS = None
