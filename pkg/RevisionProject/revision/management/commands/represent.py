from revision.cli import LabCommand


class Command(LabCommand):
    help = "Verdict de représentabilité par préordres totaux"
    command_name = "represent"
