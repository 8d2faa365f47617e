"""Semantic question answering over a science passage corpus and a
past-exam question bank, with topic classification and usage analytics."""

from .analytics import EventLog, FeedbackEvent, UsageEvent, accuracy_report, usage_report
from .corpus import CorpusStore, ExamQuestion, Figure, Paragraph, Passage, QuestionFilter
from .embedder import EmbedderConfig, ReferenceEmbedder, RemoteEmbedder, make_embedder
from .qa import AskRequest, AskResponse, QaEngine, QuestionLog
from .segmenter import make_passages, split_sentences
from .topics import TopicDataset, TopicModel, default_topic_labels
from .vindex import IndexEntry, ScoredHit, VectorIndex

__version__ = "0.1.0"

__all__ = [
    "AskRequest",
    "AskResponse",
    "CorpusStore",
    "EmbedderConfig",
    "EventLog",
    "ExamQuestion",
    "FeedbackEvent",
    "Figure",
    "IndexEntry",
    "Paragraph",
    "Passage",
    "QaEngine",
    "QuestionFilter",
    "QuestionLog",
    "ReferenceEmbedder",
    "RemoteEmbedder",
    "ScoredHit",
    "TopicDataset",
    "TopicModel",
    "UsageEvent",
    "VectorIndex",
    "accuracy_report",
    "default_topic_labels",
    "make_embedder",
    "make_passages",
    "split_sentences",
    "usage_report",
    "__version__",
]
