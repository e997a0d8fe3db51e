public class Lost {
    /* this comment never ends
    int x;
}
